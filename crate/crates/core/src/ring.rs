//! Polynomial rings k[X_1..X_m] with a chosen coefficient field and monomial order.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

#[derive(Debug)]
struct RingInner<F: Field> {
    field: F,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// The ambient ring of every polynomial; cheap to clone and share.
#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    inner: Arc<RingInner<F>>,
}

fn valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, vars: Vec<String>, order: MonomialOrder) -> Result<Self> {
        for v in &vars {
            if !valid_ident(v) {
                return Err(Error::BadVariableName(v.clone()));
            }
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        if let MonomialOrder::Block { split } = order {
            if split > vars.len() {
                return Err(Error::VarIndexOutOfRange { index: split, arity: vars.len() });
            }
        }
        Ok(PolyRing { inner: Arc::new(RingInner { field, vars, order }) })
    }

    pub fn field(&self) -> &F {
        &self.inner.field
    }

    pub fn arity(&self) -> usize {
        self.inner.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.inner.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.inner.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.inner.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> MonomialOrder {
        self.inner.order
    }

    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.inner.order.cmp(a, b)
    }

    /// Same variables and field under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Self> {
        PolyRing::new(self.inner.field.clone(), self.inner.vars.to_vec(), order)
    }

    /// New ring with `names` prepended as a dominant elimination block.
    pub fn extend_front(&self, names: &[String]) -> Result<Self> {
        let mut vars: Vec<String> = names.to_vec();
        vars.extend(self.inner.vars.iter().cloned());
        PolyRing::new(self.inner.field.clone(), vars, MonomialOrder::Block { split: names.len() })
    }

    /// New ring with `names` appended, keeping the current order kind.
    pub fn extend_back(&self, names: &[String]) -> Result<Self> {
        let mut vars = self.inner.vars.to_vec();
        vars.extend(names.iter().cloned());
        PolyRing::new(self.inner.field.clone(), vars, self.inner.order)
    }

    /// A variable name not already used, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.var_index(base).is_none() {
            return base.to_string();
        }
        let mut k = 2usize;
        loop {
            let cand = format!("{base}_{k}");
            if self.var_index(&cand).is_none() {
                return cand;
            }
            k += 1;
        }
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.field == other.inner.field
                && self.inner.vars == other.inner.vars
                && self.inner.order == other.inner.order)
    }

    /// Same field and variables, any order; polynomials convert by re-sorting.
    pub fn same_vars(&self, other: &Self) -> bool {
        self.inner.field == other.inner.field && self.inner.vars == other.inner.vars
    }

    pub fn check_same(&self, other: &Self) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

impl<F: Field> PartialEq for PolyRing<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other)
    }
}

impl<F: Field> Eq for PolyRing<F> {}

impl<F: Field> fmt::Display for PolyRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.inner.field.name(), self.inner.vars.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn names(s: &[&str]) -> Vec<String> {
        s.iter().map(|v| v.to_string()).collect()
    }

    #[test]
    fn rejects_bad_names() {
        assert!(PolyRing::new(Rationals, names(&["X", "2Y"]), MonomialOrder::DegRevLex).is_err());
        assert!(PolyRing::new(Rationals, names(&["X", "X"]), MonomialOrder::DegRevLex).is_err());
        assert!(PolyRing::new(Rationals, names(&[""]), MonomialOrder::DegRevLex).is_err());
        assert!(PolyRing::new(Rationals, names(&["X", "Y_1"]), MonomialOrder::DegRevLex).is_ok());
    }

    #[test]
    fn structural_equality() {
        let r1 = PolyRing::new(Rationals, names(&["X", "Y"]), MonomialOrder::DegRevLex).unwrap();
        let r2 = PolyRing::new(Rationals, names(&["X", "Y"]), MonomialOrder::DegRevLex).unwrap();
        let r3 = r1.with_order(MonomialOrder::Lex).unwrap();
        assert_eq!(r1, r2);
        assert_ne!(r1, r3);
        assert!(r1.same_vars(&r3));
    }

    #[test]
    fn fresh_names_avoid_clashes() {
        let r = PolyRing::new(Rationals, names(&["T", "T_2"]), MonomialOrder::DegRevLex).unwrap();
        assert_eq!(r.fresh_name("T"), "T_3");
        assert_eq!(r.fresh_name("U"), "U");
    }
}
