//! Element identity shared by every matroid of an instance.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Opaque label of a ground-set element.
///
/// Labels live in one global namespace: two matroids that mention the same
/// label talk about the same element. Integers sort before names, and each
/// kind sorts naturally within itself, which gives the total order used for
/// every deterministic tie-break in the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementId {
    Int(i64),
    Name(Arc<str>),
}

/// Sorted set of elements. Bases, ground sets and coloop sets all use it.
pub type ElementSet = BTreeSet<ElementId>;

impl ElementId {
    pub fn name(label: &str) -> Self {
        ElementId::Name(Arc::from(label))
    }
}

impl From<i64> for ElementId {
    fn from(v: i64) -> Self {
        ElementId::Int(v)
    }
}

impl From<&str> for ElementId {
    fn from(v: &str) -> Self {
        ElementId::name(v)
    }
}

impl From<String> for ElementId {
    fn from(v: String) -> Self {
        ElementId::Name(Arc::from(v))
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementId::Int(v) => write!(f, "{v}"),
            ElementId::Name(s) => f.write_str(s),
        }
    }
}

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementId::Int(v) => write!(f, "{v}"),
            ElementId::Name(s) => write!(f, "{s:?}"),
        }
    }
}

impl Serialize for ElementId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ElementId::Int(v) => serializer.serialize_i64(*v),
            ElementId::Name(s) => serializer.serialize_str(s),
        }
    }
}

struct ElementVisitor;

impl Visitor<'_> for ElementVisitor {
    type Value = ElementId;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or string element label")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<ElementId, E> {
        Ok(ElementId::Int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<ElementId, E> {
        i64::try_from(v)
            .map(ElementId::Int)
            .map_err(|_| E::custom(format!("element label {v} out of range")))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<ElementId, E> {
        Ok(ElementId::name(v))
    }
}

impl<'de> Deserialize<'de> for ElementId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(ElementVisitor)
    }
}

/// Builds an [`ElementSet`] from anything convertible to labels.
pub fn set_of<I, T>(items: I) -> ElementSet
where
    I: IntoIterator<Item = T>,
    T: Into<ElementId>,
{
    items.into_iter().map(Into::into).collect()
}
