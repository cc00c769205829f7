//! Quotient-ring presentations R = S/I, Jacobian matrices, the graded
//! Jacobian minor ideals, and the well-definedness machinery.

use crate::error::{Budget, Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// A presented quotient R = S/I with its dimension data cached.
///
/// The relation ideal keeps the generator list as chosen; all ideals of R
/// are represented by their preimages in S.
#[derive(Debug, Clone)]
pub struct Presentation<F: Field> {
    ring: PolyRing<F>,
    relations: Ideal<F>,
    dim: usize,
    codim: usize,
}

impl<F: Field> Presentation<F> {
    pub fn new(ring: &PolyRing<F>, relation_gens: Vec<Polynomial<F>>, budget: &Budget) -> Result<Self> {
        let relations = Ideal::new(ring, relation_gens)?;
        if relations.is_unit_ideal(budget)? {
            return Err(Error::ImproperIdeal);
        }
        let dim = relations.krull_dimension(budget)?;
        Ok(Presentation { ring: ring.clone(), relations, dim, codim: ring.arity() - dim })
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn relations(&self) -> &Ideal<F> {
        &self.relations
    }

    /// dim R.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// d = m - dim R.
    pub fn codim(&self) -> usize {
        self.codim
    }

    /// The m x r matrix with entry (i, j) the i-th partial of relation j.
    pub fn jacobian_matrix(&self) -> PolyMatrix<F> {
        let gens = self.relations.generators();
        let m = self.ring.arity();
        let mut entries = Vec::with_capacity(m * gens.len());
        for i in 0..m {
            for g in gens {
                entries.push(g.partial_derivative(i).expect("index in range"));
            }
        }
        PolyMatrix::new(&self.ring, m, gens.len(), entries).expect("shape by construction")
    }

    /// The preimage in S of J_n(R) = image of I_{n+d}(Jacobian).
    pub fn jn_ideal(&self, n: i64, budget: &Budget) -> Result<JnIdeal<F>> {
        let r = n + self.codim as i64;
        let minors = self.jacobian_matrix().minors_ideal(r, budget)?;
        let value_in_s = minors.sum(&self.relations)?;
        Ok(JnIdeal { n, value_in_s })
    }

    /// Reduces a polynomial modulo the relation ideal.
    pub fn reduce(&self, f: &Polynomial<F>, budget: &Budget) -> Result<Polynomial<F>> {
        Ok(self.relations.groebner(budget)?.normal_form(f))
    }

    /// True when the class of f is a unit of R; for the graded corpus this
    /// is exactly "the normal form is a nonzero constant".
    pub fn is_unit_constant(&self, f: &Polynomial<F>, budget: &Budget) -> Result<Option<F::Elem>> {
        let nf = self.reduce(f, budget)?;
        if nf.is_constant() && !nf.is_zero() {
            Ok(Some(nf.constant_term()))
        } else {
            Ok(None)
        }
    }
}

/// The ideal J_n(R) in preimage form: I_{n+d}(Jacobian) + I inside S.
#[derive(Debug, Clone)]
pub struct JnIdeal<F: Field> {
    n: i64,
    value_in_s: Ideal<F>,
}

impl<F: Field> JnIdeal<F> {
    pub fn n(&self) -> i64 {
        self.n
    }

    /// The preimage ideal in S; containment questions about J_n as an ideal
    /// of R reduce to this.
    pub fn value_in_s(&self) -> &Ideal<F> {
        &self.value_in_s
    }
}

/// Whether two generator lists of the same ideal produce the same
/// minors-plus-ideal at size r.
pub fn check_generator_invariance<F: Field>(
    ideal: &Ideal<F>,
    gens_a: &[Polynomial<F>],
    gens_b: &[Polynomial<F>],
    r: i64,
    budget: &Budget,
) -> Result<bool> {
    let ring = ideal.ring().clone();
    let ia = Ideal::new(&ring, gens_a.to_vec())?;
    let ib = Ideal::new(&ring, gens_b.to_vec())?;
    if !(ia.equals(ideal, budget)? && ib.equals(ideal, budget)?) {
        return Err(Error::GeneratorMismatch);
    }
    let ja = jacobian_of(&ring, gens_a).minors_ideal(r, budget)?.sum(ideal)?;
    let jb = jacobian_of(&ring, gens_b).minors_ideal(r, budget)?.sum(ideal)?;
    ja.equals(&jb, budget)
}

fn jacobian_of<F: Field>(ring: &PolyRing<F>, gens: &[Polynomial<F>]) -> PolyMatrix<F> {
    let m = ring.arity();
    let mut entries = Vec::with_capacity(m * gens.len());
    for i in 0..m {
        for g in gens {
            entries.push(g.partial_derivative(i).expect("index in range"));
        }
    }
    PolyMatrix::new(ring, m, gens.len(), entries).expect("shape by construction")
}

/// Eliminates relations of the shape c*X_l - g (g free of X_l) by
/// substitution, one variable and one relation at a time.  Returns the
/// minimized presentation and whether anything changed.
pub fn minimize_presentation<F: Field>(
    p: &Presentation<F>,
    budget: &Budget,
) -> Result<(Presentation<F>, bool)> {
    let mut ring = p.ring().clone();
    let mut gens: Vec<Polynomial<F>> = p.relations().generators().to_vec();
    let mut changed = false;
    'search: loop {
        for (gi, g) in gens.iter().enumerate() {
            for v in 0..ring.arity() {
                if g.degree_in(v) != 1 {
                    continue;
                }
                let head_mono = crate::monomial::Monomial::var(ring.arity(), v);
                let coeff = g.coeff_of(&head_mono);
                if ring.field().is_zero(&coeff) {
                    continue;
                }
                let head = Polynomial::monomial(&ring, head_mono, coeff.clone())?;
                let tail = g.sub(&head);
                if tail.involves_var(v) {
                    continue;
                }
                // X_v = -coeff^{-1} * tail.
                let inv = ring.field().inv(&coeff).expect("nonzero");
                let value = tail.scale(&ring.field().neg(&inv));
                let small_vars: Vec<String> = (0..ring.arity())
                    .filter(|i| *i != v)
                    .map(|i| ring.var_name(i).to_string())
                    .collect();
                let small =
                    PolyRing::new(ring.field().clone(), small_vars, ring.order())?;
                let keep: Vec<usize> = (0..ring.arity()).filter(|i| *i != v).collect();
                let mut next = Vec::new();
                for (hj, h) in gens.iter().enumerate() {
                    if hj == gi {
                        continue;
                    }
                    let substituted = h.substitute(v, &value)?;
                    if substituted.is_zero() {
                        continue;
                    }
                    next.push(substituted.restrict_into(&small, &keep)?);
                }
                ring = small;
                gens = next;
                changed = true;
                continue 'search;
            }
        }
        break;
    }
    if !changed {
        return Ok((p.clone(), false));
    }
    Ok((Presentation::new(&ring, gens, budget)?, true))
}

/// Verifies that `iso`/`inverse` define a ring isomorphism between the two
/// presentations and that the images of J_n agree at index n.
///
/// `iso[i]` is the image in p2's ring of p1's variable i; `inverse[j]` the
/// image in p1's ring of p2's variable j.
pub fn check_presentation_invariance<F: Field>(
    p1: &Presentation<F>,
    p2: &Presentation<F>,
    iso: &[Polynomial<F>],
    inverse: &[Polynomial<F>],
    n: i64,
    budget: &Budget,
) -> Result<bool> {
    let r1 = p1.ring().clone();
    let r2 = p2.ring().clone();
    if iso.len() != r1.arity() || inverse.len() != r2.arity() {
        return Err(Error::IsoVerification("variable image count mismatch".into()));
    }
    // Relations must map into relations.
    for f in p1.relations().generators() {
        let image = f.map_vars(&r2, iso)?;
        if !p2.relations().contains(&image, budget)? {
            return Err(Error::IsoVerification(format!(
                "image of relation {f} does not lie in the target relations"
            )));
        }
    }
    for g in p2.relations().generators() {
        let image = g.map_vars(&r1, inverse)?;
        if !p1.relations().contains(&image, budget)? {
            return Err(Error::IsoVerification(format!(
                "inverse image of relation {g} does not lie in the source relations"
            )));
        }
    }
    // Round trips must be the identity modulo the relations.
    for v in 0..r1.arity() {
        let round = iso[v].map_vars(&r1, inverse)?;
        let diff = round.sub(&Polynomial::var(&r1, v)?);
        if !p1.relations().contains(&diff, budget)? {
            return Err(Error::IsoVerification(format!(
                "round trip of {} is not the identity",
                r1.var_name(v)
            )));
        }
    }
    for v in 0..r2.arity() {
        let round = inverse[v].map_vars(&r2, iso)?;
        let diff = round.sub(&Polynomial::var(&r2, v)?);
        if !p2.relations().contains(&diff, budget)? {
            return Err(Error::IsoVerification(format!(
                "round trip of {} is not the identity",
                r2.var_name(v)
            )));
        }
    }
    // Compare the image of J_n(p1) with J_n(p2) inside p2's ring.
    let jn1 = p1.jn_ideal(n, budget)?;
    let jn2 = p2.jn_ideal(n, budget)?;
    let mut image_gens = Vec::new();
    for g in jn1.value_in_s().generators() {
        image_gens.push(g.map_vars(&r2, iso)?);
    }
    let image = Ideal::new(&r2, image_gens)?.sum(p2.relations())?;
    image.equals(jn2.value_in_s(), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::monomial::MonomialOrder;
    use crate::text::parse_polynomial;

    fn ring(vars: &[&str]) -> PolyRing<Rationals> {
        PolyRing::new(
            Rationals,
            vars.iter().map(|v| v.to_string()).collect(),
            MonomialOrder::DegRevLex,
        )
        .unwrap()
    }

    fn pres(r: &PolyRing<Rationals>, gens: &[&str]) -> Presentation<Rationals> {
        let polys = gens.iter().map(|s| parse_polynomial(r, s).unwrap()).collect();
        Presentation::new(r, polys, &Budget::default()).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn jacobian_of_the_coordinate_cross() {
        let r = ring(&["X", "Y_1", "Y_2"]);
        let p = pres(&r, &["X*Y_1", "X*Y_2"]);
        let jac = p.jacobian_matrix();
        assert_eq!((jac.rows(), jac.cols()), (3, 2));
        let strs: Vec<String> = (0..3)
            .map(|i| (0..2).map(|j| jac.get(i, j).to_string()).collect::<Vec<_>>().join(","))
            .collect();
        assert_eq!(strs, vec!["Y_1,Y_2", "X,0", "0,X"]);
    }

    #[test]
    fn smooth_curve_jacobian() {
        let r = ring(&["X", "Y"]);
        let p = pres(&r, &["Y - X^2"]);
        let jac = p.jacobian_matrix();
        assert_eq!(jac.get(0, 0).to_string(), "-2*X");
        assert_eq!(jac.get(1, 0).to_string(), "1");
    }

    #[test]
    fn empty_relations_give_empty_jacobian() {
        let r = ring(&["X", "Y"]);
        let p = Presentation::new(&r, vec![], &b()).unwrap();
        let jac = p.jacobian_matrix();
        assert_eq!((jac.rows(), jac.cols()), (2, 0));
        assert_eq!(p.dim(), 2);
        assert_eq!(p.codim(), 0);
    }

    #[test]
    fn improper_relations_rejected() {
        let r = ring(&["X"]);
        let gens = vec![parse_polynomial(&r, "X + 1").unwrap(), parse_polynomial(&r, "X").unwrap()];
        assert_eq!(
            Presentation::new(&r, gens, &b()).unwrap_err(),
            Error::ImproperIdeal
        );
    }

    #[test]
    fn jn_of_smooth_curve_is_unit() {
        let r = ring(&["X", "Y"]);
        let p = pres(&r, &["Y - X^2"]);
        // dim 1, d = 1, J_0 = I_1(Jacobian) + I contains the unit entry.
        let jn = p.jn_ideal(0, &b()).unwrap();
        assert!(jn.value_in_s().is_unit_ideal(&b()).unwrap());
    }

    #[test]
    fn jn_chain_descends() {
        let r = ring(&["X", "Y_1", "Y_2", "Y_3"]);
        let p = pres(&r, &["X*Y_1", "X*Y_2", "X*Y_3"]);
        for n in -1..4 {
            let upper = p.jn_ideal(n + 1, &b()).unwrap();
            let lower = p.jn_ideal(n, &b()).unwrap();
            assert!(
                lower.value_in_s().contains_ideal(upper.value_in_s(), &b()).unwrap(),
                "J_{} not inside J_{}",
                n + 1,
                n
            );
        }
    }

    #[test]
    fn jn_low_index_is_unit_plus_relations() {
        let r = ring(&["X", "Y"]);
        let p = pres(&r, &["X^2", "X*Y"]);
        // d = 1; n = -1 gives I_0 = (1).
        let jn = p.jn_ideal(-1, &b()).unwrap();
        assert!(jn.value_in_s().is_unit_ideal(&b()).unwrap());
    }

    #[test]
    fn generator_invariance_examples() {
        let r = ring(&["X", "Y"]);
        let i = Ideal::new(
            &r,
            vec![
                parse_polynomial(&r, "X^2").unwrap(),
                parse_polynomial(&r, "X*Y").unwrap(),
            ],
        )
        .unwrap();
        let a = vec![parse_polynomial(&r, "X^2").unwrap(), parse_polynomial(&r, "X*Y").unwrap()];
        // Append a combination.
        let mut extended = a.clone();
        extended.push(parse_polynomial(&r, "X^2 + X*Y").unwrap());
        assert!(check_generator_invariance(&i, &a, &extended, 1, &b()).unwrap());
        // Permutation.
        let permuted = vec![a[1].clone(), a[0].clone()];
        assert!(check_generator_invariance(&i, &a, &permuted, 1, &b()).unwrap());
        assert!(check_generator_invariance(&i, &a, &permuted, 2, &b()).unwrap());
        // Mismatched lists are a distinct error.
        let wrong = vec![parse_polynomial(&r, "X^2").unwrap()];
        assert_eq!(
            check_generator_invariance(&i, &a, &wrong, 1, &b()).unwrap_err(),
            Error::GeneratorMismatch
        );
    }

    #[test]
    fn minimize_substitutes_graph_relations() {
        let r = ring(&["X", "Y"]);
        let p = pres(&r, &["Y - X^3", "Y^2"]);
        let (small, changed) = minimize_presentation(&p, &b()).unwrap();
        assert!(changed);
        assert_eq!(small.ring().vars(), &["X".to_string()]);
        let gens: Vec<String> =
            small.relations().generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(gens, vec!["X^6"]);

        let fixed = pres(&ring(&["X"]), &["X^2"]);
        let (same, changed2) = minimize_presentation(&fixed, &b()).unwrap();
        assert!(!changed2);
        assert_eq!(same.ring().vars(), fixed.ring().vars());

        let linear = pres(&r, &["X - Y", "Y^2"]);
        let (reduced, changed3) = minimize_presentation(&linear, &b()).unwrap();
        assert!(changed3);
        assert_eq!(reduced.ring().arity(), 1);
        let gens3: Vec<String> =
            reduced.relations().generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(gens3, vec!["Y^2"]);
    }

    #[test]
    fn presentation_invariance_for_the_minimized_pair() {
        let r1 = ring(&["X", "Y"]);
        let p1 = pres(&r1, &["Y - X^3", "Y^2"]);
        let r2 = ring(&["X"]);
        let p2 = pres(&r2, &["X^6"]);
        // X -> X, Y -> X^3; inverse X -> X.
        let iso = vec![
            parse_polynomial(&r2, "X").unwrap(),
            parse_polynomial(&r2, "X^3").unwrap(),
        ];
        let inverse = vec![parse_polynomial(&r1, "X").unwrap()];
        assert!(check_presentation_invariance(&p1, &p2, &iso, &inverse, 0, &b()).unwrap());
        // The shared value is (X^5).
        let jn2 = p2.jn_ideal(0, &b()).unwrap();
        let expected = Ideal::new(&r2, vec![parse_polynomial(&r2, "X^5").unwrap()]).unwrap();
        assert!(jn2.value_in_s().equals(&expected, &b()).unwrap());
    }

    #[test]
    fn identity_iso_is_accepted() {
        let r = ring(&["X", "Y"]);
        let p = pres(&r, &["X*Y"]);
        let iso = vec![parse_polynomial(&r, "X").unwrap(), parse_polynomial(&r, "Y").unwrap()];
        assert!(check_presentation_invariance(&p, &p, &iso, &iso, 0, &b()).unwrap());
        assert!(check_presentation_invariance(&p, &p, &iso, &iso, 1, &b()).unwrap());
    }

    #[test]
    fn permutation_iso_on_the_cross() {
        let r = ring(&["X", "Y_1", "Y_2", "Y_3"]);
        let p = pres(&r, &["X*Y_1", "X*Y_2", "X*Y_3"]);
        // Swap Y_1 and Y_2.
        let iso = vec![
            parse_polynomial(&r, "X").unwrap(),
            parse_polynomial(&r, "Y_2").unwrap(),
            parse_polynomial(&r, "Y_1").unwrap(),
            parse_polynomial(&r, "Y_3").unwrap(),
        ];
        assert!(check_presentation_invariance(&p, &p, &iso, &iso, 1, &b()).unwrap());
    }

    #[test]
    fn bad_iso_is_a_distinct_error() {
        let r = ring(&["X", "Y"]);
        let p = pres(&r, &["X*Y"]);
        let iso = vec![parse_polynomial(&r, "X").unwrap(), parse_polynomial(&r, "X").unwrap()];
        assert!(matches!(
            check_presentation_invariance(&p, &p, &iso, &iso, 0, &b()),
            Err(Error::IsoVerification(_))
        ));
    }
}
