use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element name reserved for the implicit catch-all of open-world attributes.
pub const CATCH_ALL: &str = "others";

/// A closed, ordered, finite set of labels.
///
/// Element order is fixed at creation and drives every deterministic ordering
/// downstream (atoms, tables, structured output).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Domain {
    name: String,
    elements: Vec<String>,
}

impl Domain {
    pub fn new<S: Into<String>, E: Into<String>>(
        name: S,
        elements: impl IntoIterator<Item = E>,
    ) -> Result<Arc<Self>> {
        let name = name.into();
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.is_empty() {
            return Err(Error::EmptyDomain(name));
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::DuplicateElement {
                    domain: name,
                    element: e.clone(),
                });
            }
        }
        Ok(Arc::new(Domain { name, elements }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, element: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == element)
    }

    /// Like [`position`](Self::position) but reports the missing label.
    pub fn index_of(&self, element: &str) -> Result<usize> {
        self.position(element).ok_or_else(|| Error::UnknownElement {
            domain: self.name.clone(),
            element: element.to_string(),
        })
    }

    pub fn label(&self, index: usize) -> &str {
        &self.elements[index]
    }

    /// Same domain with the catch-all element appended (no-op if present).
    pub fn with_catch_all(&self) -> Arc<Self> {
        let mut elements = self.elements.clone();
        if !elements.iter().any(|e| e == CATCH_ALL) {
            elements.push(CATCH_ALL.to_string());
        }
        Arc::new(Domain {
            name: self.name.clone(),
            elements,
        })
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {{{}}}", self.name, self.elements.join(", "))
    }
}

/// Structural equality, with a pointer fast path.
pub fn same_domain(a: &Arc<Domain>, b: &Arc<Domain>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_same(a: &Arc<Domain>, b: &Arc<Domain>) -> Result<()> {
    if same_domain(a, b) {
        Ok(())
    } else {
        Err(Error::DomainMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}
