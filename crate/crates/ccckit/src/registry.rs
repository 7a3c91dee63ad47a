//! Name-addressed registries for pluggable construction strategies.
//!
//! Partition recipes, orthogonal-family generators, and seed sources
//! all follow one pattern: a handful of built-in implementations behind
//! a common trait, selected at runtime by a selector string from a
//! recipe or command line. Each kind keeps its own [`Registry`].

/// A named, selectable implementation of some construction step.
pub trait Strategy {
    /// The canonical name this strategy registers under.
    fn name(&self) -> &'static str;

    /// Whether this strategy accepts `selector`. The default accepts
    /// exactly [`Strategy::name`]; strategies with parameterized
    /// selectors (prefixes, paths) override this.
    fn claims(&self, selector: &str) -> bool {
        selector == self.name()
    }
}

/// An ordered set of strategies resolved by selector string. Resolution
/// walks registration order and takes the first claimant, so catch-all
/// strategies belong last.
pub struct Registry<T: ?Sized> {
    entries: Vec<Box<T>>,
}

impl<T: Strategy + ?Sized> Registry<T> {
    pub fn new() -> Registry<T> {
        Registry {
            entries: Vec::new(),
        }
    }

    pub fn register(&mut self, entry: Box<T>) {
        self.entries.push(entry);
    }

    pub fn resolve(&self, selector: &str) -> Option<&T> {
        self.entries
            .iter()
            .find(|e| e.claims(selector))
            .map(Box::as_ref)
    }

    /// Registered names in registration order, for error messages.
    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }
}

impl<T: Strategy + ?Sized> Default for Registry<T> {
    fn default() -> Self {
        Registry::new()
    }
}
