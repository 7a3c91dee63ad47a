//! Symbols and the alphabets they range over.
//!
//! Every symbol is either exactly zero or a root of unity stored as a
//! reduced fraction of a full turn. Products, conjugates, and equality
//! are exact; nothing rounds until a caller asks for a floating value.
//! Symbols whose order divides 4 also embed into the Gaussian integers,
//! which lets correlation sums over the common alphabets stay in exact
//! integer arithmetic.

use num_complex::Complex64;
use num_integer::Integer;

/// A single code symbol: zero, or `exp(2*pi*i * num/order)` with
/// `num/order` in lowest terms and `0 <= num < order`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Entry {
    Zero,
    Root { num: u32, order: u32 },
}

impl Entry {
    pub const ONE: Entry = Entry::Root { num: 0, order: 1 };
    pub const MINUS_ONE: Entry = Entry::Root { num: 1, order: 2 };

    /// The root of unity `exp(2*pi*i * num/order)`, canonicalized.
    ///
    /// Panics if `order` is zero; orders are always caller-controlled
    /// constants or validated input.
    pub fn root(num: u32, order: u32) -> Entry {
        assert!(order > 0, "root order must be positive");
        let num = num % order;
        let g = num.gcd(&order);
        Entry::Root {
            num: num / g,
            order: order / g,
        }
    }

    /// Maps -1, 0, 1 onto the ternary alphabet.
    pub fn from_int(v: i64) -> Option<Entry> {
        match v {
            -1 => Some(Entry::MINUS_ONE),
            0 => Some(Entry::Zero),
            1 => Some(Entry::ONE),
            _ => None,
        }
    }

    /// Inverse of [`Entry::from_int`] where one exists.
    pub fn as_int(self) -> Option<i64> {
        match self {
            Entry::Zero => Some(0),
            Entry::ONE => Some(1),
            Entry::MINUS_ONE => Some(-1),
            _ => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Entry::Zero
    }

    /// The multiplicative order, or `None` for zero.
    pub fn order(self) -> Option<u32> {
        match self {
            Entry::Zero => None,
            Entry::Root { order, .. } => Some(order),
        }
    }

    pub fn conj(self) -> Entry {
        match self {
            Entry::Zero => Entry::Zero,
            Entry::Root { num, order } => Entry::root(order - num, order),
        }
    }

    /// The symbol as a Gaussian integer `(re, im)` when its order
    /// divides 4, i.e. when it is one of 0, 1, -1, i, -i.
    pub fn as_gaussian(self) -> Option<(i64, i64)> {
        match self {
            Entry::Zero => Some((0, 0)),
            Entry::ONE => Some((1, 0)),
            Entry::MINUS_ONE => Some((-1, 0)),
            Entry::Root { num: 1, order: 4 } => Some((0, 1)),
            Entry::Root { num: 3, order: 4 } => Some((0, -1)),
            _ => None,
        }
    }

    /// The symbol as a complex float.
    pub fn value(self) -> Complex64 {
        match self {
            Entry::Zero => Complex64::new(0.0, 0.0),
            Entry::ONE => Complex64::new(1.0, 0.0),
            Entry::MINUS_ONE => Complex64::new(-1.0, 0.0),
            Entry::Root { num, order } => {
                let theta = std::f64::consts::TAU * f64::from(num) / f64::from(order);
                Complex64::new(theta.cos(), theta.sin())
            }
        }
    }
}

impl std::ops::Mul for Entry {
    type Output = Entry;

    fn mul(self, rhs: Entry) -> Entry {
        match (self, rhs) {
            (Entry::Zero, _) | (_, Entry::Zero) => Entry::Zero,
            (Entry::Root { num: a, order: p }, Entry::Root { num: b, order: q }) => {
                // Common denominator lcm(p, q); numerators scale accordingly.
                let l = p.lcm(&q);
                Entry::root((a * (l / p) + b * (l / q)) % l, l)
            }
        }
    }
}

impl std::fmt::Display for Entry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Entry::Zero => f.write_str("0"),
            Entry::ONE => f.write_str("+1"),
            Entry::MINUS_ONE => f.write_str("-1"),
            Entry::Root { num, order } => write!(f, "w({num}/{order})"),
        }
    }
}

/// The symbol universe a code set declares.
///
/// `Ternary` is `{0, 1, -1}`; `QaryWithZero { q }` is zero together
/// with all q-th roots of unity. Ternary coincides with q = 2 but is
/// kept distinct so documents and reports can preserve the narrower
/// declaration.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Alphabet {
    Ternary,
    QaryWithZero { q: u32 },
}

impl Alphabet {
    /// The root order admitted by this alphabet.
    pub fn q(self) -> u32 {
        match self {
            Alphabet::Ternary => 2,
            Alphabet::QaryWithZero { q } => q,
        }
    }

    pub fn contains(self, e: Entry) -> bool {
        match e {
            Entry::Zero => true,
            Entry::Root { order, .. } => self.q().is_multiple_of(order),
        }
    }

    /// The smallest alphabet containing both operands.
    pub fn promote(self, other: Alphabet) -> Alphabet {
        match (self, other) {
            (Alphabet::Ternary, Alphabet::Ternary) => Alphabet::Ternary,
            _ => Alphabet::QaryWithZero {
                q: self.q().lcm(&other.q()),
            },
        }
    }

    /// Whether every admitted symbol is a Gaussian integer, making
    /// correlation sums exact.
    pub fn is_exact(self) -> bool {
        4 % self.q() == 0
    }

    /// Comparison tolerance for correlation values at the given scale,
    /// where scale is the largest magnitude a sum can reach. Exact
    /// alphabets tolerate nothing.
    pub fn tolerance(self, scale: f64) -> f64 {
        if self.is_exact() { 0.0 } else { 1e-9 * scale }
    }
}

impl std::fmt::Display for Alphabet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Alphabet::Ternary => f.write_str("ternary"),
            Alphabet::QaryWithZero { q } => write!(f, "{q}-ary-with-zero"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_canonicalize() {
        assert_eq!(Entry::root(2, 4), Entry::MINUS_ONE);
        assert_eq!(Entry::root(0, 8), Entry::ONE);
        assert_eq!(Entry::root(6, 8), Entry::Root { num: 3, order: 4 });
        assert_eq!(Entry::root(5, 3), Entry::Root { num: 2, order: 3 });
    }

    #[test]
    fn products_are_exact() {
        let i = Entry::root(1, 4);
        assert_eq!(i * i, Entry::MINUS_ONE);
        assert_eq!(i * i * i * i, Entry::ONE);
        assert_eq!(Entry::MINUS_ONE * Entry::MINUS_ONE, Entry::ONE);
        assert_eq!(Entry::Zero * i, Entry::Zero);

        let w = Entry::root(1, 3);
        assert_eq!(w * w * w, Entry::ONE);
        assert_eq!(w * w.conj(), Entry::ONE);
    }

    #[test]
    fn conjugation() {
        assert_eq!(Entry::ONE.conj(), Entry::ONE);
        assert_eq!(Entry::MINUS_ONE.conj(), Entry::MINUS_ONE);
        assert_eq!(Entry::root(1, 4).conj(), Entry::root(3, 4));
        assert_eq!(Entry::Zero.conj(), Entry::Zero);
    }

    #[test]
    fn gaussian_embedding_covers_order_four() {
        assert_eq!(Entry::Zero.as_gaussian(), Some((0, 0)));
        assert_eq!(Entry::ONE.as_gaussian(), Some((1, 0)));
        assert_eq!(Entry::MINUS_ONE.as_gaussian(), Some((-1, 0)));
        assert_eq!(Entry::root(1, 4).as_gaussian(), Some((0, 1)));
        assert_eq!(Entry::root(3, 4).as_gaussian(), Some((0, -1)));
        assert_eq!(Entry::root(1, 3).as_gaussian(), None);
        assert_eq!(Entry::root(1, 8).as_gaussian(), None);
    }

    #[test]
    fn float_values_match_angles() {
        let w = Entry::root(1, 8).value();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((w.re - s).abs() < 1e-15);
        assert!((w.im - s).abs() < 1e-15);
    }

    #[test]
    fn alphabet_membership_and_promotion() {
        let t = Alphabet::Ternary;
        let q4 = Alphabet::QaryWithZero { q: 4 };
        let q3 = Alphabet::QaryWithZero { q: 3 };

        assert!(t.contains(Entry::Zero));
        assert!(t.contains(Entry::MINUS_ONE));
        assert!(!t.contains(Entry::root(1, 4)));
        assert!(q4.contains(Entry::root(1, 4)));
        assert!(!q3.contains(Entry::MINUS_ONE));

        assert_eq!(t.promote(t), Alphabet::Ternary);
        assert_eq!(t.promote(q4), q4);
        assert_eq!(q3.promote(t), Alphabet::QaryWithZero { q: 6 });
        assert_eq!(q3.promote(q4), Alphabet::QaryWithZero { q: 12 });
    }

    #[test]
    fn exactness_is_order_divides_four() {
        assert!(Alphabet::Ternary.is_exact());
        assert!(Alphabet::QaryWithZero { q: 1 }.is_exact());
        assert!(Alphabet::QaryWithZero { q: 2 }.is_exact());
        assert!(Alphabet::QaryWithZero { q: 4 }.is_exact());
        assert!(!Alphabet::QaryWithZero { q: 3 }.is_exact());
        assert!(!Alphabet::QaryWithZero { q: 8 }.is_exact());
        assert_eq!(Alphabet::Ternary.tolerance(100.0), 0.0);
        assert!(Alphabet::QaryWithZero { q: 3 }.tolerance(10.0) > 0.0);
    }
}
