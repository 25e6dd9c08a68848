//! Named characteristic classes of a hypersurface, selectable at runtime.
//!
//! Each class is a [`CharacteristicClass`] implementation held in a
//! [`ClassRegistry`]. Registration order is report order.

use std::sync::Arc;

use crate::chowring::ChowClass;
use crate::hypersurface::Hypersurface;

pub trait CharacteristicClass: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn compute(&self, x: &Hypersurface) -> ChowClass;
}

macro_rules! class_strategy {
    ($ty:ident, $name:literal, $summary:literal, $method:ident) => {
        pub struct $ty;

        impl CharacteristicClass for $ty {
            fn name(&self) -> &'static str {
                $name
            }
            fn summary(&self) -> &'static str {
                $summary
            }
            fn compute(&self, x: &Hypersurface) -> ChowClass {
                x.$method()
            }
        }
    };
}

class_strategy!(SegreInput, "segre", "Segre class of the singular scheme", segre_owned);
class_strategy!(Fulton, "fulton", "Fulton class c(TM) . s(X,M)", fulton);
class_strategy!(Csm, "csm", "Chern-Schwartz-MacPherson class", csm);
class_strategy!(Milnor, "milnor", "Milnor class c_SM - c_F", milnor);
class_strategy!(Le, "le", "Le class c(O(X)) c(T*M (x) O(X)) . s", le_class);
class_strategy!(Mu, "mu", "mu-class c(T*M (x) O(X)) . s", mu_class);
class_strategy!(Aluffi, "aluffi", "Aluffi class c(O(X)) . M(X)", aluffi_class);

impl Hypersurface {
    fn segre_owned(&self) -> ChowClass {
        self.segre_singular().clone()
    }
}

#[derive(Clone, Default)]
pub struct ClassRegistry {
    entries: Vec<Arc<dyn CharacteristicClass>>,
}

impl std::fmt::Debug for ClassRegistry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

impl ClassRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn builtin() -> Self {
        let mut reg = Self::new();
        reg.register(Arc::new(Fulton));
        reg.register(Arc::new(Csm));
        reg.register(Arc::new(Milnor));
        reg.register(Arc::new(Le));
        reg.register(Arc::new(Mu));
        reg.register(Arc::new(Aluffi));
        reg
    }

    /// Adds a class, replacing any earlier entry with the same name in place.
    pub fn register(&mut self, class: Arc<dyn CharacteristicClass>) {
        match self.entries.iter_mut().find(|e| e.name() == class.name()) {
            Some(slot) => *slot = class,
            None => self.entries.push(class),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Arc<dyn CharacteristicClass>> {
        self.entries.iter().find(|e| e.name() == name)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn CharacteristicClass>> {
        self.entries.iter()
    }

    /// Sub-registry with the named classes, in the order given.
    pub fn select<S: AsRef<str>>(&self, names: &[S]) -> Result<ClassRegistry, String> {
        let mut out = ClassRegistry::new();
        for name in names {
            let name = name.as_ref();
            let entry = self.get(name).ok_or_else(|| {
                format!("unknown class `{name}` (known: {})", self.names().join(", "))
            })?;
            out.register(entry.clone());
        }
        Ok(out)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn evaluate(&self, x: &Hypersurface) -> Vec<(&'static str, ChowClass)> {
        self.entries.iter().map(|e| (e.name(), e.compute(x))).collect()
    }
}
