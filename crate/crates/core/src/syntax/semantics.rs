//! Compositional semantics. Every interpretation in the crate (classical truth
//! tables, algebra elements under an assignment, extensions in a model) is an
//! instance of [`Semantics`], so one evaluator and one class enumerator serve
//! all of them.

use std::collections::HashMap;
use std::hash::Hash;

use super::{Formula, Prop};
use crate::error::{Error, Result};

pub trait Semantics {
    type Value: Clone + Eq + Hash;

    /// `None` when the proposition is not interpreted.
    fn prop(&self, p: &Prop) -> Option<Self::Value>;
    fn top(&self) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn and(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn aware(&self, a: &Self::Value) -> Self::Value;
    fn know(&self, a: &Self::Value) -> Self::Value;
}

pub fn eval<S: Semantics + ?Sized>(s: &S, f: &Formula) -> Result<S::Value> {
    Ok(match f {
        Formula::Prop(p) => s.prop(p).ok_or_else(|| Error::UnboundProp(p.to_string()))?,
        Formula::Top => s.top(),
        Formula::Neg(a) => s.neg(&eval(s, a)?),
        Formula::And(a, b) => s.and(&eval(s, a)?, &eval(s, b)?),
        Formula::Aware(a) => s.aware(&eval(s, a)?),
        Formula::Know(a) => s.know(&eval(s, a)?),
    })
}

impl<S: Semantics + ?Sized> Semantics for &S {
    type Value = S::Value;

    fn prop(&self, p: &Prop) -> Option<Self::Value> {
        (**self).prop(p)
    }
    fn top(&self) -> Self::Value {
        (**self).top()
    }
    fn neg(&self, a: &Self::Value) -> Self::Value {
        (**self).neg(a)
    }
    fn and(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        (**self).and(a, b)
    }
    fn aware(&self, a: &Self::Value) -> Self::Value {
        (**self).aware(a)
    }
    fn know(&self, a: &Self::Value) -> Self::Value {
        (**self).know(a)
    }
}

/// Two semantics evaluated side by side.
pub struct Pair<S, T>(pub S, pub T);

impl<S: Semantics, T: Semantics> Semantics for Pair<S, T> {
    type Value = (S::Value, T::Value);

    fn prop(&self, p: &Prop) -> Option<Self::Value> {
        Some((self.0.prop(p)?, self.1.prop(p)?))
    }
    fn top(&self) -> Self::Value {
        (self.0.top(), self.1.top())
    }
    fn neg(&self, a: &Self::Value) -> Self::Value {
        (self.0.neg(&a.0), self.1.neg(&a.1))
    }
    fn and(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        (self.0.and(&a.0, &b.0), self.1.and(&a.1, &b.1))
    }
    fn aware(&self, a: &Self::Value) -> Self::Value {
        (self.0.aware(&a.0), self.1.aware(&a.1))
    }
    fn know(&self, a: &Self::Value) -> Self::Value {
        (self.0.know(&a.0), self.1.know(&a.1))
    }
}

/// Many semantics of one type evaluated side by side, e.g. one lane per
/// assignment or per model.
pub struct Lanes<S>(pub Vec<S>);

impl<S: Semantics> Semantics for Lanes<S> {
    type Value = Vec<S::Value>;

    fn prop(&self, p: &Prop) -> Option<Self::Value> {
        self.0.iter().map(|s| s.prop(p)).collect()
    }
    fn top(&self) -> Self::Value {
        self.0.iter().map(S::top).collect()
    }
    fn neg(&self, a: &Self::Value) -> Self::Value {
        self.0.iter().zip(a).map(|(s, x)| s.neg(x)).collect()
    }
    fn and(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        self.0.iter().zip(a.iter().zip(b)).map(|(s, (x, y))| s.and(x, y)).collect()
    }
    fn aware(&self, a: &Self::Value) -> Self::Value {
        self.0.iter().zip(a).map(|(s, x)| s.aware(x)).collect()
    }
    fn know(&self, a: &Self::Value) -> Self::Value {
        self.0.iter().zip(a).map(|(s, x)| s.know(x)).collect()
    }
}

/// Overlays fixed values for some propositions, used to evaluate schema
/// templates with metavariables bound to already computed values.
pub struct Bound<'a, S: Semantics> {
    pub inner: &'a S,
    pub bindings: HashMap<Prop, S::Value>,
}

impl<'a, S: Semantics> Bound<'a, S> {
    pub fn new(inner: &'a S) -> Self {
        Bound { inner, bindings: HashMap::new() }
    }

    pub fn with(mut self, p: &Prop, v: S::Value) -> Self {
        self.bindings.insert(p.clone(), v);
        self
    }
}

impl<S: Semantics> Semantics for Bound<'_, S> {
    type Value = S::Value;

    fn prop(&self, p: &Prop) -> Option<Self::Value> {
        self.bindings.get(p).cloned().or_else(|| self.inner.prop(p))
    }
    fn top(&self) -> Self::Value {
        self.inner.top()
    }
    fn neg(&self, a: &Self::Value) -> Self::Value {
        self.inner.neg(a)
    }
    fn and(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        self.inner.and(a, b)
    }
    fn aware(&self, a: &Self::Value) -> Self::Value {
        self.inner.aware(a)
    }
    fn know(&self, a: &Self::Value) -> Self::Value {
        self.inner.know(a)
    }
}
