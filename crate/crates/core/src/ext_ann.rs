//! Finitely presented modules over a presentation, free resolutions, Ext
//! annihilators, and the sampled upper bounds for cohomology annihilators.
//!
//! Every annihilator intersection over a finite module family is an upper
//! bound for the true cohomology annihilator; reports say so explicitly and
//! nothing here claims to compute the full intersection over mod R.

use crate::error::{Budget, Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::matrix::PolyMatrix;
use crate::poly::Polynomial;
use crate::presentation::Presentation;
use crate::ring::PolyRing;
use crate::syzygy::{module_groebner, syzygies_with_helpers, ModuleOrder, ModuleVec};

const MAX_RESOLUTION_LENGTH: usize = 8;

/// A finitely presented module R^rank / columns(relations).
#[derive(Debug, Clone)]
pub struct FpModule<F: Field> {
    pres: Presentation<F>,
    rank: usize,
    relations: Vec<Vec<Polynomial<F>>>,
    label: String,
}

impl<F: Field> PartialEq for FpModule<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.relations == other.relations
            && self.pres.relations() == other.pres.relations()
    }
}

impl<F: Field> FpModule<F> {
    pub fn new(
        pres: &Presentation<F>,
        rank: usize,
        relations: Vec<Vec<Polynomial<F>>>,
        label: impl Into<String>,
        budget: &Budget,
    ) -> Result<Self> {
        let mut reduced = Vec::with_capacity(relations.len());
        for col in relations {
            if col.len() != rank {
                return Err(Error::MatrixShape);
            }
            let col = col
                .iter()
                .map(|p| {
                    p.ring().check_same(pres.ring())?;
                    pres.reduce(p, budget)
                })
                .collect::<Result<Vec<_>>>()?;
            if col.iter().any(|p| !p.is_zero()) {
                reduced.push(col);
            }
        }
        Ok(FpModule { pres: pres.clone(), rank, relations: reduced, label: label.into() })
    }

    /// The residue field k = R/(variables).
    pub fn residue_field(pres: &Presentation<F>, budget: &Budget) -> Result<Self> {
        let ring = pres.ring();
        let rels = (0..ring.arity())
            .map(|i| Ok(vec![Polynomial::var(ring, i)?]))
            .collect::<Result<Vec<_>>>()?;
        FpModule::new(pres, 1, rels, "k", budget)
    }

    /// R as a module over itself.
    pub fn free_rank_one(pres: &Presentation<F>, budget: &Budget) -> Result<Self> {
        FpModule::new(pres, 1, Vec::new(), "R", budget)
    }

    /// R / (ideal + I).
    pub fn quotient_by_ideal(
        pres: &Presentation<F>,
        ideal: &Ideal<F>,
        label: impl Into<String>,
        budget: &Budget,
    ) -> Result<Self> {
        let rels = ideal.generators().iter().map(|g| vec![g.clone()]).collect();
        FpModule::new(pres, 1, rels, label, budget)
    }

    /// Cokernel of a single column vector in R^rows.
    pub fn cokernel_of_column(
        pres: &Presentation<F>,
        col: Vec<Polynomial<F>>,
        label: impl Into<String>,
        budget: &Budget,
    ) -> Result<Self> {
        let rank = col.len();
        FpModule::new(pres, rank, vec![col], label, budget)
    }

    pub fn presentation(&self) -> &Presentation<F> {
        &self.pres
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[Vec<Polynomial<F>>] {
        &self.relations
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Whether this module is the residue field presentation: rank one with
    /// relations generating the irrelevant maximal ideal.
    pub fn is_residue_field(&self, budget: &Budget) -> Result<bool> {
        if self.rank != 1 {
            return Ok(false);
        }
        let ring = self.pres.ring();
        let mut gens: Vec<Polynomial<F>> =
            self.relations.iter().map(|col| col[0].clone()).collect();
        gens.extend(self.pres.relations().generators().iter().cloned());
        let all_vars: Vec<usize> = (0..ring.arity()).collect();
        Ideal::new(ring, gens)?.equals(&Ideal::of_vars(ring, &all_vars)?, budget)
    }
}

/// A chain of free modules F_0 <- F_1 <- ... with d_{k+1} = maps[k].
#[derive(Debug, Clone)]
pub struct Resolution<F: Field> {
    pres: Presentation<F>,
    ranks: Vec<usize>,
    maps: Vec<PolyMatrix<F>>,
    complete: bool,
}

impl<F: Field> Resolution<F> {
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn maps(&self) -> &[PolyMatrix<F>] {
        &self.maps
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// True when the final syzygy computation returned the zero module.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn rank_at(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }
}

/// Syzygies over R = S/I of the columns of a matrix over R: plain syzygies
/// over S helped by the untagged columns f*e for relation generators f.
fn syzygies_over_presentation<F: Field>(
    pres: &Presentation<F>,
    matrix: &PolyMatrix<F>,
    budget: &Budget,
) -> Result<Vec<ModuleVec<F>>> {
    let ring = pres.ring();
    let rank = matrix.rows();
    let tagged: Vec<ModuleVec<F>> = matrix
        .columns()
        .into_iter()
        .map(ModuleVec::from_dense)
        .collect();
    let mut helpers = Vec::new();
    let gb = pres.relations().groebner(budget)?;
    for f in gb.elements() {
        for pos in 0..rank {
            helpers.push(ModuleVec::from_entries(rank, vec![(pos, f.clone())]));
        }
    }
    let raw = syzygies_with_helpers(ring, rank, &tagged, &helpers, budget)?;
    let mut out = Vec::new();
    for v in raw {
        let reduced: Vec<(usize, Polynomial<F>)> = v
            .entries()
            .iter()
            .map(|(pos, p)| Ok((*pos, pres.reduce(p, budget)?)))
            .collect::<Result<Vec<_>>>()?;
        let rv = ModuleVec::from_entries(v.rank(), reduced);
        if !rv.is_zero() && !out.contains(&rv) {
            out.push(rv);
        }
    }
    Ok(out)
}

/// Cancels constant pivots between the last two maps, keeping graded
/// resolutions minimal as they grow.
fn minimize_last_map<F: Field>(
    pres: &Presentation<F>,
    ranks: &mut Vec<usize>,
    maps: &mut Vec<PolyMatrix<F>>,
    budget: &Budget,
) -> Result<()> {
    let k = maps.len() - 1;
    loop {
        let m = &maps[k];
        let mut pivot = None;
        'scan: for r in 0..m.rows() {
            for c in 0..m.cols() {
                let e = m.get(r, c);
                if e.is_constant() && !e.is_zero() {
                    pivot = Some((r, c, e.constant_term()));
                    break 'scan;
                }
            }
        }
        let Some((r, c, u)) = pivot else { break };
        let field = pres.ring().field().clone();
        let inv = field.inv(&u).expect("nonzero constant");
        let mut m = maps[k].clone();
        // Column operations clear row r outside the pivot.
        for c2 in 0..m.cols() {
            if c2 == c || m.get(r, c2).is_zero() {
                continue;
            }
            let factor = m.get(r, c2).scale(&inv);
            for r2 in 0..m.rows() {
                let updated = m.get(r2, c2).sub(&factor.mul(m.get(r2, c)));
                m.set(r2, c2, pres.reduce(&updated, budget)?);
            }
        }
        // Row operations clear column c outside the pivot.
        for r2 in 0..m.rows() {
            if r2 == r || m.get(r2, c).is_zero() {
                continue;
            }
            let factor = m.get(r2, c).scale(&inv);
            for c2 in 0..m.cols() {
                let updated = m.get(r2, c2).sub(&factor.mul(m.get(r, c2)));
                m.set(r2, c2, pres.reduce(&updated, budget)?);
            }
        }
        // Drop row r and column c; generator r of F_k and generator c of
        // F_{k+1} cancel as a split summand.
        let ring = pres.ring().clone();
        let mut entries = Vec::new();
        for r2 in 0..m.rows() {
            if r2 == r {
                continue;
            }
            for c2 in 0..m.cols() {
                if c2 == c {
                    continue;
                }
                entries.push(m.get(r2, c2).clone());
            }
        }
        maps[k] = PolyMatrix::new(&ring, m.rows() - 1, m.cols() - 1, entries)?;
        ranks[k] -= 1;
        ranks[k + 1] -= 1;
        if k >= 1 {
            // F_k lost generator r: delete the matching column one level down.
            let prev = &maps[k - 1];
            let mut prev_entries = Vec::new();
            for r2 in 0..prev.rows() {
                for c2 in 0..prev.cols() {
                    if c2 == r {
                        continue;
                    }
                    prev_entries.push(prev.get(r2, c2).clone());
                }
            }
            maps[k - 1] = PolyMatrix::new(&ring, prev.rows(), prev.cols() - 1, prev_entries)?;
        }
    }
    // Zero columns contribute nothing.
    let m = &maps[k];
    let keep: Vec<usize> = (0..m.cols())
        .filter(|&c| (0..m.rows()).any(|r| !m.get(r, c).is_zero()))
        .collect();
    if keep.len() != m.cols() {
        let ring = pres.ring().clone();
        let mut entries = Vec::new();
        for r in 0..m.rows() {
            for &c in &keep {
                entries.push(m.get(r, c).clone());
            }
        }
        maps[k] = PolyMatrix::new(&ring, m.rows(), keep.len(), entries)?;
        ranks[k + 1] = keep.len();
    }
    Ok(())
}

/// A free resolution of `module` of at most the requested length; stops
/// early (and is flagged complete) when the syzygies vanish.
pub fn free_resolution<F: Field>(
    module: &FpModule<F>,
    length: usize,
    budget: &Budget,
) -> Result<Resolution<F>> {
    if length > MAX_RESOLUTION_LENGTH {
        return Err(Error::ResolutionTooLong(length, MAX_RESOLUTION_LENGTH));
    }
    let pres = module.presentation().clone();
    let ring = pres.ring().clone();
    let mut ranks = vec![module.rank()];
    let mut maps: Vec<PolyMatrix<F>> = Vec::new();
    if module.relations().is_empty() || length == 0 {
        return Ok(Resolution { pres, ranks, maps, complete: module.relations().is_empty() });
    }
    let d1 = PolyMatrix::from_columns(&ring, module.rank(), module.relations().to_vec())?;
    ranks.push(d1.cols());
    maps.push(d1);
    minimize_last_map(&pres, &mut ranks, &mut maps, budget)?;
    let mut complete = false;
    while maps.len() < length {
        let last = maps.last().expect("nonempty");
        if last.cols() == 0 {
            maps.pop();
            ranks.pop();
            complete = true;
            break;
        }
        let syz = syzygies_over_presentation(&pres, last, budget)?;
        if syz.is_empty() {
            complete = true;
            break;
        }
        let cols: Vec<Vec<Polynomial<F>>> =
            syz.iter().map(|v| v.to_dense(&ring)).collect();
        let next = PolyMatrix::from_columns(&ring, last.cols(), cols)?;
        ranks.push(next.cols());
        maps.push(next);
        minimize_last_map(&pres, &mut ranks, &mut maps, budget)?;
        if maps.last().expect("nonempty").cols() == 0 {
            maps.pop();
            ranks.pop();
            complete = true;
            break;
        }
    }
    Ok(Resolution { pres, ranks, maps, complete })
}

/// Checks d o d = 0 over R and that every syzygy of map k is covered by the
/// image of map k+1; used by tests, not the hot path.
pub fn verify_resolution<F: Field>(res: &Resolution<F>, budget: &Budget) -> Result<bool> {
    let pres = &res.pres;
    for k in 1..res.maps.len() {
        let prod = res.maps[k - 1].matmul(&res.maps[k])?;
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                if !pres.reduce(prod.get(i, j), budget)?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    for k in 0..res.maps.len().saturating_sub(1) {
        let syz = syzygies_over_presentation(pres, &res.maps[k], budget)?;
        let ring = pres.ring();
        let rank = res.maps[k].cols();
        let image_cols: Vec<ModuleVec<F>> = res.maps[k + 1]
            .columns()
            .into_iter()
            .map(ModuleVec::from_dense)
            .collect();
        let mut helpers = Vec::new();
        for f in pres.relations().groebner(budget)?.elements() {
            for pos in 0..rank {
                helpers.push(ModuleVec::from_entries(rank, vec![(pos, f.clone())]));
            }
        }
        let mut all: Vec<ModuleVec<F>> = image_cols;
        all.extend(helpers);
        let order = ModuleOrder::top();
        let gb = module_groebner(ring, &order, &all, budget)?;
        for s in syz {
            if !module_member(ring, &order, &gb, &s) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn module_member<F: Field>(
    ring: &PolyRing<F>,
    order: &ModuleOrder,
    gb: &[ModuleVec<F>],
    v: &ModuleVec<F>,
) -> bool {
    // Top-reduction loop; gb is a Groebner basis, so reaching an
    // irreducible nonzero lead certifies non-membership.
    let field = ring.field().clone();
    let mut work = v.clone();
    'outer: loop {
        let Some((pos, lm, lc)) = lead_of(ring, order, &work) else { return true };
        for g in gb {
            let Some((gp, gm, gc)) = lead_of(ring, order, g) else { continue };
            if gp == pos && gm.divides(&lm) {
                let q = gm.quotient_of(&lm).expect("divides");
                let c = field.div(&lc, &gc).expect("nonzero");
                work = work.sub_scaled(&c, &q, g);
                continue 'outer;
            }
        }
        return false;
    }
}

fn lead_of<F: Field>(
    ring: &PolyRing<F>,
    order: &ModuleOrder,
    v: &ModuleVec<F>,
) -> Option<(usize, crate::monomial::Monomial, F::Elem)> {
    let mut best: Option<(usize, crate::monomial::Monomial, F::Elem)> = None;
    for (pos, p) in v.entries() {
        let (m, c) = p.terms().first()?;
        let cand = (*pos, m.clone(), c.clone());
        best = match best {
            None => Some(cand),
            Some(cur) => {
                let take = {
                    let a = (cand.0, &cand.1);
                    let b = (cur.0, &cur.1);
                    module_term_greater(ring, order, a, b)
                };
                if take {
                    Some(cand)
                } else {
                    Some(cur)
                }
            }
        };
    }
    best
}

fn module_term_greater<F: Field>(
    ring: &PolyRing<F>,
    order: &ModuleOrder,
    a: (usize, &crate::monomial::Monomial),
    b: (usize, &crate::monomial::Monomial),
) -> bool {
    let block = |pos: usize| if pos < order.split { 0 } else { 1 };
    match block(b.0).cmp(&block(a.0)) {
        std::cmp::Ordering::Greater => return true,
        std::cmp::Ordering::Less => return false,
        std::cmp::Ordering::Equal => {}
    }
    match ring.cmp_monomials(a.1, b.1) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => a.0 < b.0,
    }
}

/// The annihilator of Ext^i(M, N) as a preimage ideal in S, plus the
/// standing caveat that family intersections only bound ca^i from above.
#[derive(Debug, Clone)]
pub struct ExtAnnReport<F: Field> {
    pub degree: usize,
    pub ann: Ideal<F>,
    pub family_intersection: Option<Ideal<F>>,
    pub note: String,
}

const UPPER_BOUND_NOTE: &str =
    "annihilator intersections over a finite family are upper bounds for ca^i, never the value";

fn gaussian_rank<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let mut rank = 0;
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut row_idx = 0;
    for col in 0..ncols {
        let Some(pivot) = (row_idx..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(row_idx, pivot);
        let inv = field.inv(&rows[row_idx][col].clone()).expect("nonzero");
        for c in col..ncols {
            rows[row_idx][c] = field.mul(&rows[row_idx][c], &inv);
        }
        for r in 0..rows.len() {
            if r != row_idx && !field.is_zero(&rows[r][col]) {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let sub = field.mul(&factor, &rows[row_idx][c]);
                    rows[r][c] = field.sub(&rows[r][c], &sub);
                }
            }
        }
        rank += 1;
        row_idx += 1;
        if row_idx == rows.len() {
            break;
        }
    }
    rank
}

fn constant_matrix<F: Field>(m: &PolyMatrix<F>) -> Vec<Vec<F::Elem>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).constant_term()).collect())
        .collect()
}

fn unit_vector_cocycles<F: Field>(ring: &PolyRing<F>, rank: usize) -> Vec<ModuleVec<F>> {
    (0..rank)
        .map(|i| ModuleVec::from_entries(rank, vec![(i, Polynomial::one(ring))]))
        .collect()
}

/// Ann Ext^i(M, N) computed from a resolution of M of length >= i+1 (or a
/// complete shorter one).
pub fn ext_annihilator_with_resolution<F: Field>(
    res: &Resolution<F>,
    n_module: &FpModule<F>,
    i: usize,
    budget: &Budget,
) -> Result<ExtAnnReport<F>> {
    let pres = &res.pres;
    let ring = pres.ring().clone();
    if res.length() < i + 1 && !res.is_complete() && res.rank_at(i) != 0 {
        return Err(Error::Internal(format!(
            "resolution of length {} cannot compute Ext^{i}",
            res.length()
        )));
    }
    let b_i = res.rank_at(i);
    let unit_report = |note: &str| -> Result<ExtAnnReport<F>> {
        Ok(ExtAnnReport {
            degree: i,
            ann: Ideal::unit(&ring),
            family_intersection: None,
            note: format!("{note}; {UPPER_BOUND_NOTE}"),
        })
    };
    if b_i == 0 {
        return unit_report("Ext vanishes: the resolution is complete below this degree");
    }
    if n_module.is_residue_field(budget)? {
        // Hom(-, k) turns every differential into its constant matrix.
        let rank_into = if i == 0 {
            0
        } else {
            gaussian_rank(ring.field(), constant_matrix(&res.maps[i - 1]))
        };
        let rank_out = if i < res.maps.len() {
            gaussian_rank(ring.field(), constant_matrix(&res.maps[i]))
        } else {
            0
        };
        let dim = b_i - rank_out - rank_into;
        if dim == 0 {
            return unit_report("Ext(.,k) has zero homology here");
        }
        let all_vars: Vec<usize> = (0..ring.arity()).collect();
        let ann = Ideal::of_vars(&ring, &all_vars)?.sum(pres.relations())?;
        return Ok(ExtAnnReport {
            degree: i,
            ann,
            family_intersection: None,
            note: format!("residue-field fast path; {UPPER_BOUND_NOTE}"),
        });
    }

    let s = n_module.rank();
    let domain = s * b_i;
    let b_ip1 = res.rank_at(i + 1);
    let relation_gb: Vec<Polynomial<F>> =
        pres.relations().groebner(budget)?.elements().to_vec();

    // Cocycles: w with d_{i+1}^*(w) falling into the submodule spanned by
    // N's relations and I in every target copy.
    let cocycles: Vec<ModuleVec<F>> = if b_ip1 == 0 {
        unit_vector_cocycles(&ring, domain)
    } else {
        let d_next = &res.maps[i];
        let target = s * b_ip1;
        let mut tagged = Vec::with_capacity(domain);
        for j in 0..b_i {
            for a in 0..s {
                let mut entries = Vec::new();
                for g in 0..b_ip1 {
                    let e = d_next.get(j, g);
                    if !e.is_zero() {
                        entries.push((g * s + a, e.clone()));
                    }
                }
                tagged.push(ModuleVec::from_entries(target, entries));
            }
        }
        let mut helpers = Vec::new();
        for g in 0..b_ip1 {
            for q in n_module.relations() {
                let entries: Vec<(usize, Polynomial<F>)> = q
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(a, p)| (g * s + a, p.clone()))
                    .collect();
                helpers.push(ModuleVec::from_entries(target, entries));
            }
            for f in &relation_gb {
                for a in 0..s {
                    helpers.push(ModuleVec::from_entries(target, vec![(g * s + a, f.clone())]));
                }
            }
        }
        syzygies_with_helpers(&ring, target, &tagged, &helpers, budget)?
    };

    // Coboundaries plus the ambient submodule U in the domain copies.
    let mut boundary: Vec<ModuleVec<F>> = Vec::new();
    if i >= 1 {
        let d_i = &res.maps[i - 1];
        let b_im1 = res.rank_at(i - 1);
        for t in 0..b_im1 {
            for a in 0..s {
                let mut entries = Vec::new();
                for j in 0..b_i {
                    let e = d_i.get(t, j);
                    if !e.is_zero() {
                        entries.push((j * s + a, e.clone()));
                    }
                }
                let v = ModuleVec::from_entries(domain, entries);
                if !v.is_zero() {
                    boundary.push(v);
                }
            }
        }
    }
    for j in 0..b_i {
        for q in n_module.relations() {
            let entries: Vec<(usize, Polynomial<F>)> = q
                .iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(a, p)| (j * s + a, p.clone()))
                .collect();
            let v = ModuleVec::from_entries(domain, entries);
            if !v.is_zero() {
                boundary.push(v);
            }
        }
        for f in &relation_gb {
            for a in 0..s {
                boundary.push(ModuleVec::from_entries(domain, vec![(j * s + a, f.clone())]));
            }
        }
    }
    let order = ModuleOrder::top();
    let boundary_gb = module_groebner(&ring, &order, &boundary, budget)?;
    let survivors: Vec<ModuleVec<F>> = cocycles
        .into_iter()
        .filter(|z| !module_member(&ring, &order, &boundary_gb, z))
        .collect();
    if survivors.is_empty() {
        return unit_report("every cocycle is a coboundary: Ext vanishes");
    }
    let mut ann: Option<Ideal<F>> = None;
    for z in &survivors {
        let colon_gens = syzygies_with_helpers(&ring, domain, &[z.clone()], &boundary, budget)?;
        let gens: Vec<Polynomial<F>> = colon_gens
            .into_iter()
            .map(|v| v.component(0, &ring))
            .filter(|p| !p.is_zero())
            .collect();
        let colon = Ideal::new(&ring, gens)?.sum(pres.relations())?;
        ann = Some(match ann {
            None => colon,
            Some(acc) => acc.intersect(&colon, budget)?,
        });
    }
    Ok(ExtAnnReport {
        degree: i,
        ann: ann.expect("nonempty survivors"),
        family_intersection: None,
        note: UPPER_BOUND_NOTE.to_string(),
    })
}

/// Ann Ext^i(M, N), resolving M on demand.
pub fn ext_annihilator<F: Field>(
    m_module: &FpModule<F>,
    n_module: &FpModule<F>,
    i: usize,
    budget: &Budget,
) -> Result<ExtAnnReport<F>> {
    if i + 1 > MAX_RESOLUTION_LENGTH {
        return Err(Error::ResolutionTooLong(i + 1, MAX_RESOLUTION_LENGTH));
    }
    let res = free_resolution(m_module, i + 1, budget)?;
    ext_annihilator_with_resolution(&res, n_module, i, budget)
}

/// The intersection of Ann Ext^i over a finite family of pairs: an upper
/// bound for ca^i(R) in preimage form.
pub fn ca_upper_bound<F: Field>(
    pres: &Presentation<F>,
    i: usize,
    family: &[(FpModule<F>, FpModule<F>)],
    budget: &Budget,
) -> Result<ExtAnnReport<F>> {
    if family.is_empty() {
        return Err(Error::ConstructionInapplicable("empty module family".into()));
    }
    for (m, n) in family {
        if m.presentation().relations() != pres.relations()
            || n.presentation().relations() != pres.relations()
        {
            return Err(Error::RingMismatch);
        }
    }
    let mut resolutions: Vec<(&FpModule<F>, Resolution<F>)> = Vec::new();
    for (m, _) in family {
        if !resolutions.iter().any(|(known, _)| *known == m) {
            let res = free_resolution(m, (i + 1).min(MAX_RESOLUTION_LENGTH), budget)?;
            resolutions.push((m, res));
        }
    }
    let mut bound: Option<Ideal<F>> = None;
    for (m, n) in family {
        let res = &resolutions.iter().find(|(known, _)| known == &m).expect("resolved").1;
        let report = ext_annihilator_with_resolution(res, n, i, budget)?;
        bound = Some(match bound {
            None => report.ann,
            Some(acc) => acc.intersect(&report.ann, budget)?,
        });
    }
    let bound = bound.expect("nonempty family");
    Ok(ExtAnnReport {
        degree: i,
        ann: bound.clone(),
        family_intersection: Some(bound),
        note: format!("{UPPER_BOUND_NOTE}; family size {}", family.len()),
    })
}

/// Radicals of the sampled bounds across a degree range, with the flag
/// recording whether they agree; evidence for stability, not verification.
#[derive(Debug, Clone)]
pub struct StabilityReport<F: Field> {
    pub bounds: Vec<(usize, Ideal<F>)>,
    pub radicals_agree: bool,
    pub note: String,
}

pub fn stability_evidence<F: Field>(
    pres: &Presentation<F>,
    family: &[(FpModule<F>, FpModule<F>)],
    i_range: &[usize],
    budget: &Budget,
) -> Result<StabilityReport<F>> {
    if family.is_empty() || i_range.is_empty() {
        return Err(Error::ConstructionInapplicable("empty family or degree range".into()));
    }
    let d = pres.dim();
    if i_range[0] < d + 1 {
        return Err(Error::ConstructionInapplicable(format!(
            "degree range must start at dim + 1 = {}",
            d + 1
        )));
    }
    let max_i = *i_range.iter().max().expect("nonempty");
    let mut resolutions: Vec<(&FpModule<F>, Resolution<F>)> = Vec::new();
    for (m, _) in family {
        if !resolutions.iter().any(|(known, _)| *known == m) {
            let res = free_resolution(m, (max_i + 1).min(MAX_RESOLUTION_LENGTH), budget)?;
            resolutions.push((m, res));
        }
    }
    let mut bounds = Vec::new();
    for &i in i_range {
        let mut bound: Option<Ideal<F>> = None;
        for (m, n) in family {
            let res = &resolutions.iter().find(|(known, _)| known == &m).expect("resolved").1;
            let report = ext_annihilator_with_resolution(res, n, i, budget)?;
            bound = Some(match bound {
                None => report.ann,
                Some(acc) => acc.intersect(&report.ann, budget)?,
            });
        }
        bounds.push((i, bound.expect("nonempty family")));
    }
    let mut agree = true;
    for k in 1..bounds.len() {
        if !bounds[0].1.radical_equals(&bounds[k].1, budget)? {
            agree = false;
            break;
        }
    }
    Ok(StabilityReport {
        bounds,
        radicals_agree: agree,
        note: format!("EVIDENCE only: {UPPER_BOUND_NOTE}"),
    })
}

/// The default sampled family: k, R, the certified minimal-prime quotients,
/// and Jacobian-column cokernels, capped at eight modules.
pub fn default_module_family<F: Field>(
    pres: &Presentation<F>,
    budget: &Budget,
) -> Result<Vec<FpModule<F>>> {
    let mut family = vec![
        FpModule::residue_field(pres, budget)?,
        FpModule::free_rank_one(pres, budget)?,
    ];
    if let Ok(report) = crate::primes::minimal_primes(pres.relations(), budget) {
        if report.certified {
            for (idx, p) in report.primes.iter().enumerate() {
                if family.len() >= 8 {
                    break;
                }
                let module =
                    FpModule::quotient_by_ideal(pres, p, format!("R/p{}", idx + 1), budget)?;
                if !family.contains(&module) {
                    family.push(module);
                }
            }
        }
    }
    let jac = pres.jacobian_matrix();
    for j in 0..jac.cols() {
        if family.len() >= 8 {
            break;
        }
        let module =
            FpModule::cokernel_of_column(pres, jac.column(j), format!("coker_jac{}", j + 1), budget)?;
        if !family.contains(&module) {
            family.push(module);
        }
    }
    Ok(family)
}

/// The default stability sampling: the single pair (k, k).
pub fn default_stability_pairs<F: Field>(
    pres: &Presentation<F>,
    budget: &Budget,
) -> Result<Vec<(FpModule<F>, FpModule<F>)>> {
    let k = FpModule::residue_field(pres, budget)?;
    Ok(vec![(k.clone(), k)])
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
    fn koszul_resolution_over_the_free_ring() {
        let r = ring(&["X"]);
        let p = Presentation::new(&r, vec![], &b()).unwrap();
        let k = FpModule::residue_field(&p, &b()).unwrap();
        let res = free_resolution(&k, 4, &b()).unwrap();
        assert_eq!(res.length(), 1);
        assert!(res.is_complete());
        assert_eq!(res.ranks(), &[1, 1]);
    }

    #[test]
    fn free_module_resolves_in_zero_steps() {
        let r = ring(&["X", "Y"]);
        let p = pres(&r, &["X*Y"]);
        let f = FpModule::free_rank_one(&p, &b()).unwrap();
        let res = free_resolution(&f, 3, &b()).unwrap();
        assert_eq!(res.length(), 0);
        assert!(res.is_complete());
    }

    #[test]
    fn first_syzygy_of_k_is_annihilated_by_x() {
        // R = k[X,Y]/(X^2, XY); the first syzygy of (X, Y) is killed by X.
        let r = ring(&["X", "Y"]);
        let p = pres(&r, &["X^2", "X*Y"]);
        let k = FpModule::residue_field(&p, &b()).unwrap();
        let res = free_resolution(&k, 2, &b()).unwrap();
        assert!(verify_resolution(&res, &b()).unwrap());
        let d2 = &res.maps()[1];
        let x = parse_polynomial(&r, "X").unwrap();
        for c in 0..d2.cols() {
            for row in 0..d2.rows() {
                let scaled = x.mul(d2.get(row, c));
                assert!(p.reduce(&scaled, &b()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn minimality_of_graded_resolutions() {
        let r = ring(&["X", "Y"]);
        let p = pres(&r, &["X^2", "X*Y"]);
        let k = FpModule::residue_field(&p, &b()).unwrap();
        let res = free_resolution(&k, 4, &b()).unwrap();
        for m in res.maps() {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let e = m.get(i, j);
                    assert!(e.is_zero() || !e.is_constant(), "unit entry in a graded resolution");
                }
            }
        }
    }

    #[test]
    fn ext_of_k_with_k_over_the_socle_ring() {
        let r = ring(&["X", "Y"]);
        let p = pres(&r, &["X^2", "X*Y"]);
        let k = FpModule::residue_field(&p, &b()).unwrap();
        let report = ext_annihilator(&k, &k, 1, &b()).unwrap();
        let x = parse_polynomial(&r, "X").unwrap();
        assert!(report.ann.contains(&x, &b()).unwrap());
        let expected = Ideal::new(
            &r,
            vec![x, parse_polynomial(&r, "Y").unwrap()],
        )
        .unwrap();
        assert!(report.ann.equals(&expected.sum(p.relations()).unwrap(), &b()).unwrap());
    }

    #[test]
    fn ext_vanishes_beyond_global_dimension() {
        let r = ring(&["X"]);
        let p = Presentation::new(&r, vec![], &b()).unwrap();
        let k = FpModule::residue_field(&p, &b()).unwrap();
        let report = ext_annihilator(&k, &k, 2, &b()).unwrap();
        assert!(report.ann.is_unit_ideal(&b()).unwrap());
    }

    #[test]
    fn hom_of_r_with_r_has_annihilator_i() {
        let r = ring(&["X", "Y"]);
        let p = pres(&r, &["X^2", "X*Y"]);
        let free = FpModule::free_rank_one(&p, &b()).unwrap();
        let report = ext_annihilator(&free, &free, 0, &b()).unwrap();
        assert!(report.ann.equals(p.relations(), &b()).unwrap());
    }

    #[test]
    fn general_path_matches_fast_path_on_small_pairs() {
        let r = ring(&["X", "Y"]);
        let p = pres(&r, &["X^2", "X*Y"]);
        let k = FpModule::residue_field(&p, &b()).unwrap();
        // k ⊕ k presented with rank two forces the general route, and its
        // Ext annihilators agree with the residue-field fast path.
        let x = parse_polynomial(&r, "X").unwrap();
        let y = parse_polynomial(&r, "Y").unwrap();
        let zero = parse_polynomial(&r, "0").unwrap();
        let k_squared = FpModule::new(
            &p,
            2,
            vec![
                vec![x.clone(), zero.clone()],
                vec![y.clone(), zero.clone()],
                vec![zero.clone(), x.clone()],
                vec![zero.clone(), y.clone()],
            ],
            "k^2",
            &b(),
        )
        .unwrap();
        assert!(!k_squared.is_residue_field(&b()).unwrap());
        for i in 0..3 {
            let fast = ext_annihilator(&k, &k, i, &b()).unwrap();
            let slow = ext_annihilator(&k, &k_squared, i, &b()).unwrap();
            assert!(fast.ann.equals(&slow.ann, &b()).unwrap(), "degree {i}");
        }
    }

    #[test]
    fn upper_bound_note_is_always_present() {
        let r = ring(&["X", "Y"]);
        let p = pres(&r, &["X^2", "X*Y"]);
        let k = FpModule::residue_field(&p, &b()).unwrap();
        let report = ext_annihilator(&k, &k, 1, &b()).unwrap();
        assert!(report.note.contains("upper bound"));
        let bound = ca_upper_bound(&p, 1, &[(k.clone(), k)], &b()).unwrap();
        assert!(bound.note.contains("upper bound"));
    }
}
