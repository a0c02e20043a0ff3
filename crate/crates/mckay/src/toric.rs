//! The minimal resolution of the A_{n-1} surface singularity as a toric
//! variety: fan and charts, exceptional curves with self-intersection
//! -2, universal cluster ideals per chart, the stratification invariant
//! V(I), tautological degrees from chart transition exponents and the
//! full cyclic McKay cross-check for both cyclic forms.
//!
//! Lattice conventions: the ambient rays are v_i = (n-i, i); the
//! resolution lattice N' = Z(1,0) + Z(1/n)(n-1, 1) is handled through
//! exact integer coordinates of the primitive ray generators v_i / n.
//! Monomials x^p y^q carry the character rho_{p-q mod n}.


use crate::exact::Cyclotomic;
use crate::galois::{FoldContext, FormKind, GaloisForm, OrbitPartition};
use crate::graphs::{self, GraphVertex, McKayGraph};
use crate::groups::GroupId;
use crate::poly::{
    buchberger, normal_form, quotient_basis, IdealBasis, Monomial, MonomialOrder, Polynomial,
    QuotientBasis,
};
use crate::report::Report;
use crate::{Error, Result};

/// Fan of the minimal resolution of A^2/(Z/nZ).
#[derive(Clone, Debug)]
pub struct Fan {
    pub n: u64,
    /// Ambient ray vectors v_i = (n-i, i), i = 0..n.
    pub rays: Vec<(i64, i64)>,
    /// Coordinates of the primitive generators v_i/n in the lattice N'.
    pub rays_nprime: Vec<(i64, i64)>,
    /// Chart coordinate exponent vectors (s_i, t_i) in M, one pair per
    /// maximal cone, computed as the dual basis of the cone.
    pub charts: Vec<((i64, i64), (i64, i64))>,
}

/// N'-coordinates of an ambient vector (p1/n, p2/n): solves
/// (p1/n, p2/n) = a (1,0) + b ((n-1)/n, 1/n) integrally.
fn nprime_coords(n: i64, p1: i64, p2: i64) -> Result<(i64, i64)> {
    let b = p2;
    let a_num = p1 - b * (n - 1);
    if a_num % n != 0 {
        return Err(Error::Verification(format!(
            "({p1}/n, {p2}/n) is not a lattice point of N'"
        )));
    }
    Ok((a_num / n, b))
}

/// Construct the fan, check every maximal cone is unimodular in N', and
/// recover the chart coordinates s_i, t_i as the dual basis.
pub fn build_fan(n: u64) -> Result<Fan> {
    if n < 2 {
        return Err(Error::InvalidGroup("toric resolution needs n >= 2".into()));
    }
    let ni = n as i64;
    let rays: Vec<(i64, i64)> = (0..=ni).map(|i| (ni - i, i)).collect();
    let rays_nprime: Vec<(i64, i64)> = rays
        .iter()
        .map(|&(p1, p2)| nprime_coords(ni, p1, p2))
        .collect::<Result<_>>()?;
    let mut charts = Vec::with_capacity(n as usize);
    for i in 0..ni {
        let w0 = rays_nprime[i as usize];
        let w1 = rays_nprime[i as usize + 1];
        let det = w0.0 * w1.1 - w0.1 * w1.0;
        if det.abs() != 1 {
            return Err(Error::Verification(format!(
                "cone {i} is not unimodular: det = {det}"
            )));
        }
        // dual basis u with <u, w> computed through the ambient pairing
        // <u, v_j>/n: solve u . v_i = n, u . v_{i+1} = 0 and vice versa
        let v0 = rays[i as usize];
        let v1 = rays[i as usize + 1];
        let solve = |rhs0: i64, rhs1: i64| -> Result<(i64, i64)> {
            let det2 = v0.0 * v1.1 - v0.1 * v1.0;
            if det2 == 0 {
                return Err(Error::Verification("degenerate cone".into()));
            }
            let u1_num = rhs0 * v1.1 - rhs1 * v0.1;
            let u2_num = rhs1 * v0.0 - rhs0 * v1.0;
            if u1_num % det2 != 0 || u2_num % det2 != 0 {
                return Err(Error::Verification(
                    "dual generator is not integral".into(),
                ));
            }
            Ok((u1_num / det2, u2_num / det2))
        };
        let s = solve(ni, 0)?;
        let t = solve(0, ni)?;
        // members of M' satisfy u1 = u2 mod n
        for u in [s, t] {
            if (u.0 - u.1).rem_euclid(ni) != 0 {
                return Err(Error::Verification(format!(
                    "chart generator {u:?} is not G-invariant"
                )));
            }
        }
        charts.push((s, t));
    }
    Ok(Fan {
        n,
        rays,
        rays_nprime,
        charts,
    })
}

/// One exceptional curve E_i: the interior ray i, living in the two
/// charts U_{i-1} and U_i, parametrized by (a : b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalCurve {
    pub index: u64,
    pub charts: (u64, u64),
    pub self_intersection: i64,
}

impl Fan {
    /// The exceptional curves E_1 .. E_{n-1} with their chart covers and
    /// self-intersection numbers.
    pub fn curves(&self) -> Result<Vec<ExceptionalCurve>> {
        let selfints = self_intersections(self)?;
        Ok((1..self.n)
            .map(|i| ExceptionalCurve {
                index: i,
                charts: (i - 1, i),
                self_intersection: selfints[(i - 1) as usize],
            })
            .collect())
    }
}

/// For each interior ray the integer k with w_{i-1} + w_{i+1} = k w_i in
/// N'; the self-intersection of E_i is -k.
pub fn self_intersections(fan: &Fan) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for i in 1..fan.n as usize {
        let (a0, b0) = fan.rays_nprime[i - 1];
        let (a1, b1) = fan.rays_nprime[i];
        let (a2, b2) = fan.rays_nprime[i + 1];
        let (sa, sb) = (a0 + a2, b0 + b2);
        // solve (sa, sb) = k (a1, b1) integrally
        let k = if a1 != 0 { sa / a1 } else { sb / b1 };
        if a1 * k != sa || b1 * k != sb {
            return Err(Error::Verification(format!(
                "rays {i}-1, {i}, {i}+1 are not in a lattice relation"
            )));
        }
        out.push(-k);
    }
    Ok(out)
}

/// Orbits of curve indices 1..n-1 under the ray action (identity for
/// the mu-form, i -> n-i for the constant form).
pub fn ray_orbits(n: u64, action: Option<&dyn Fn(u64) -> u64>) -> OrbitPartition {
    let count = (n - 1) as usize;
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; count + 1];
    for i in 1..=count as u64 {
        if seen[i as usize] {
            continue;
        }
        let mut orbit = vec![i as usize - 1];
        seen[i as usize] = true;
        if let Some(f) = action {
            let mut j = f(i);
            while !seen[j as usize] {
                seen[j as usize] = true;
                orbit.push(j as usize - 1);
                j = f(j);
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    OrbitPartition { orbits }
}

/// The (possibly folded) intersection graph of the exceptional divisor.
/// Loops follow the definition: half the self-intersection plus the
/// multiplicity.
pub fn intersection_graph(fan: &Fan, ray_action: Option<&dyn Fn(u64) -> u64>) -> Result<McKayGraph> {
    let n = fan.n;
    let selfints = self_intersections(fan)?;
    let count = (n - 1) as usize;
    // split intersection numbers: consecutive curves share a cone
    let mut split = vec![vec![0i64; count]; count];
    for (i, row) in split.iter_mut().enumerate() {
        for (j, value) in row.iter_mut().enumerate() {
            if i == j {
                *value = selfints[i];
            } else if i.abs_diff(j) == 1 {
                *value = 1;
            }
        }
    }
    let partition = ray_orbits(n, ray_action);
    let orbits = &partition.orbits;
    let k = orbits.len();
    let mut vertices = Vec::with_capacity(k);
    let mut adjacency = vec![vec![0u32; k]; k];
    for (a, orbit) in orbits.iter().enumerate() {
        let mult = orbit.len() as u32;
        let label = orbit
            .iter()
            .map(|&i| format!("E_{}", i + 1))
            .collect::<Vec<_>>()
            .join("+");
        // (sum of components)^2 = sum of all pairwise intersections
        let mut self_total = 0i64;
        for &u in orbit {
            for &v in orbit {
                self_total += split[u][v];
            }
        }
        if self_total.rem_euclid(2) != 0 {
            return Err(Error::Verification(format!(
                "odd self-intersection {self_total} on orbit {orbit:?}"
            )));
        }
        let loops = self_total / 2 + mult as i64;
        if loops < 0 {
            return Err(Error::Verification(format!(
                "negative loop count on orbit {orbit:?}"
            )));
        }
        vertices.push(GraphVertex {
            label,
            mult,
            degree: mult,
            trivial: false,
        });
        adjacency[a][a] = loops as u32;
        for (b, other) in orbits.iter().enumerate().skip(a + 1) {
            let mut edges = 0i64;
            for &u in orbit {
                for &v in other {
                    edges += split[u][v];
                }
            }
            adjacency[a][b] = edges as u32;
            adjacency[b][a] = edges as u32;
        }
    }
    Ok(McKayGraph {
        vertices,
        adjacency,
        extended: false,
        label: None,
    })
}

// ---------------------------------------------------------------------
// cluster ideals
// ---------------------------------------------------------------------

fn xy_poly(terms: &[((u32, u32), Cyclotomic)]) -> Polynomial {
    Polynomial::from_terms(
        2,
        MonomialOrder::Lex,
        terms
            .iter()
            .map(|((p, q), c)| (Monomial(vec![*p, *q]), c.clone())),
    )
}

/// The universal cluster ideal of chart i, specialized at (s, t):
/// x^{i+1} - s y^{n-(i+1)}, xy - s t, y^{n-i} - t x^i.
pub fn cluster_ideal_at(n: u64, chart: u64, s: &Cyclotomic, t: &Cyclotomic) -> Result<IdealBasis> {
    if chart >= n {
        return Err(Error::InvalidGroup(format!(
            "chart index {chart} out of range for n = {n}"
        )));
    }
    let i = chart as u32;
    let nn = n as u32;
    let one = Cyclotomic::one();
    let gens = vec![
        xy_poly(&[((i + 1, 0), one.clone()), ((0, nn - i - 1), -s)]),
        xy_poly(&[((1, 1), one.clone()), ((0, 0), -&(s * t))]),
        xy_poly(&[((0, nn - i), one), ((i, 0), -t)]),
    ];
    Ok(IdealBasis::new(gens))
}

/// The restriction of the universal ideal to the curve E_i at the point
/// (a : b): for b != 0 the ideal x^i - (a/b) y^{n-i}, xy, y^{n-(i-1)},
/// x^{i+1}; symmetrically for a != 0.
pub fn restrict_to_curve(
    n: u64,
    curve: u64,
    a: &Cyclotomic,
    b: &Cyclotomic,
) -> Result<IdealBasis> {
    if curve == 0 || curve >= n {
        return Err(Error::InvalidGroup(format!(
            "curve index {curve} out of range for n = {n}"
        )));
    }
    if a.is_zero() && b.is_zero() {
        return Err(Error::InvalidSolution("(a, b) must not be (0, 0)".into()));
    }
    let i = curve as u32;
    let nn = n as u32;
    let one = Cyclotomic::one();
    let lead = if !b.is_zero() {
        // x^i - (a/b) y^{n-i}
        xy_poly(&[((i, 0), one.clone()), ((0, nn - i), -&(a * &b.inv()?))])
    } else {
        // (b/a) x^i - y^{n-i} with b = 0
        xy_poly(&[((0, nn - i), -Cyclotomic::one())])
    };
    Ok(IdealBasis::new(vec![
        lead,
        xy_poly(&[((1, 1), one.clone())]),
        xy_poly(&[((0, nn - i + 1), one.clone())]),
        xy_poly(&[((i + 1, 0), one)]),
    ]))
}

fn grade(n: u64, p: u32, q: u32) -> u64 {
    (p as i64 - q as i64).rem_euclid(n as i64) as u64
}

/// Check a specialized cluster ideal: finite quotient of dimension n
/// whose standard monomials carry the regular character (each rho_j
/// exactly once under x^p y^q -> rho_{p-q}).
pub fn verify_cluster(ideal: &IdealBasis, n: u64) -> Report {
    let mut report = Report::new(format!("cluster quotient (n = {n})"));
    let gb = ideal.groebner();
    match quotient_basis(gb) {
        QuotientBasis::Infinite => {
            report.check("finite quotient", false, "infinite-dimensional quotient");
        }
        QuotientBasis::Finite(monomials) => {
            report.check(
                "dimension equals n",
                monomials.len() == n as usize,
                format!("dimension {}", monomials.len()),
            );
            let mut counts = vec![0usize; n as usize];
            for m in &monomials {
                counts[grade(n, m.0[0], m.0[1]) as usize] += 1;
            }
            report.check(
                "regular character",
                counts.iter().all(|&c| c == 1),
                format!("character multiplicities {counts:?}"),
            );
        }
    }
    report
}

/// The stratification invariant V(I) = I-bar / m-bar I-bar, decomposed
/// by the Z/n grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VofI {
    /// (grade j, multiplicity of rho_j), nonzero entries only.
    pub characters: Vec<(u64, usize)>,
}

impl VofI {
    pub fn total_dim(&self) -> usize {
        self.characters.iter().map(|(_, m)| m).sum()
    }

    pub fn grades(&self) -> Vec<u64> {
        self.characters.iter().map(|(g, _)| *g).collect()
    }

    /// Hom(V(I), rho_j) != 0.
    pub fn meets(&self, j: u64) -> bool {
        self.characters.iter().any(|(g, _)| *g == j)
    }
}

/// Elements of S-bar = S/(x^n, y^n, xy): coordinates over the basis
/// 1, x..x^{n-1}, y..y^{n-1}.
fn reduce_to_sbar(n: usize, poly: &Polynomial) -> Vec<Cyclotomic> {
    let mut v = vec![Cyclotomic::zero(); 2 * n - 1];
    for (m, c) in poly.terms() {
        let (p, q) = (m.0[0] as usize, m.0[1] as usize);
        if p >= n || q >= n || (p > 0 && q > 0) {
            continue;
        }
        let idx = if p > 0 { p } else if q > 0 { n + q - 1 } else { 0 };
        v[idx] = &v[idx] + c;
    }
    v
}

fn sbar_grade(n: usize, idx: usize) -> u64 {
    if idx == 0 {
        0
    } else if idx < n {
        idx as u64
    } else {
        (n as u64) - (idx - n + 1) as u64
    }
}

/// Rank per grade of a list of S-bar vectors (each vector must be
/// concentrated in a single grade: the ideals here are G-stable, hence
/// graded).
fn graded_ranks(n: usize, vectors: &[Vec<Cyclotomic>]) -> Result<Vec<usize>> {
    let mut by_grade: Vec<Vec<Vec<Cyclotomic>>> = vec![Vec::new(); n];
    for v in vectors {
        let support: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
        if support.is_empty() {
            continue;
        }
        let g = sbar_grade(n, support[0]);
        if support.iter().any(|&i| sbar_grade(n, i) != g) {
            return Err(Error::Verification(
                "ideal is not graded for the Z/n action".into(),
            ));
        }
        by_grade[g as usize].push(v.clone());
    }
    let mut ranks = vec![0usize; n];
    for (g, vecs) in by_grade.iter().enumerate() {
        ranks[g] = cyclotomic_rank(vecs);
    }
    Ok(ranks)
}

fn cyclotomic_rank(vectors: &[Vec<Cyclotomic>]) -> usize {
    let mut rows: Vec<Vec<Cyclotomic>> = vectors.to_vec();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("pivot nonzero");
        for c in col..cols {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..cols {
                    let d = &f * &rows[rank][c];
                    rows[r][c] = &rows[r][c] - &d;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Compute V(I) for an ideal containing the invariant maximal ideal
/// (x^n, y^n, xy); asserts the dichotomy that V(I) is one irreducible
/// or two non-isomorphic ones.
pub fn v_of_i(ideal: &IdealBasis, n: u64) -> Result<VofI> {
    let nn = n as usize;
    let gb = ideal.groebner();
    let one = Cyclotomic::one();
    let invariant_gens = [
        xy_poly(&[((n as u32, 0), one.clone())]),
        xy_poly(&[((0, n as u32), one.clone())]),
        xy_poly(&[((1, 1), one)]),
    ];
    for g in &invariant_gens {
        if !normal_form(g, gb).is_zero() {
            return Err(Error::NotOnFiber(format!(
                "{g} is not in the ideal; the point is off the exceptional fiber"
            )));
        }
    }
    // span of the ideal image inside S-bar: generators times the
    // monomial basis of S-bar
    let mut monomials = vec![Monomial(vec![0, 0])];
    for p in 1..nn as u32 {
        monomials.push(Monomial(vec![p, 0]));
    }
    for q in 1..nn as u32 {
        monomials.push(Monomial(vec![0, q]));
    }
    let mut ibar: Vec<Vec<Cyclotomic>> = Vec::new();
    for g in &ideal.generators {
        for m in &monomials {
            ibar.push(reduce_to_sbar(nn, &g.mul_term(m, &Cyclotomic::one())));
        }
    }
    let ibar_ranks = graded_ranks(nn, &ibar)?;
    // m-bar I-bar: multiply the spanning set by x and y
    let mut mibar: Vec<Vec<Cyclotomic>> = Vec::new();
    for g in &ideal.generators {
        for m in &monomials {
            for var in 0..2 {
                let shifted = g
                    .mul_term(m, &Cyclotomic::one())
                    .mul_term(&Monomial::var(2, var, 1), &Cyclotomic::one());
                mibar.push(reduce_to_sbar(nn, &shifted));
            }
        }
    }
    let mibar_ranks = graded_ranks(nn, &mibar)?;
    let mut characters = Vec::new();
    for g in 0..nn {
        let d = ibar_ranks[g].checked_sub(mibar_ranks[g]).ok_or_else(|| {
            Error::Verification(format!(
                "m-bar I-bar exceeds I-bar in grade {g}: {} > {}",
                mibar_ranks[g], ibar_ranks[g]
            ))
        })?;
        if d > 0 {
            characters.push((g as u64, d));
        }
    }
    let v = VofI { characters };
    let ok = match v.characters.len() {
        1 => v.characters[0].1 <= 2 && v.characters[0].1 >= 1,
        2 => v.characters.iter().all(|(_, m)| *m == 1),
        _ => false,
    };
    // the dichotomy: irreducible, or two non-isomorphic irreducibles
    if !ok || v.total_dim() > 2 || v.total_dim() == 0 {
        return Err(Error::Verification(format!(
            "V(I) = {:?} violates the irreducible-or-two-distinct dichotomy",
            v.characters
        )));
    }
    if v.total_dim() == 2 && v.characters.len() == 1 {
        return Err(Error::Verification(format!(
            "V(I) = {:?} repeats one character",
            v.characters
        )));
    }
    Ok(v)
}

// ---------------------------------------------------------------------
// tautological degrees
// ---------------------------------------------------------------------

fn xys_poly(terms: &[((u32, u32, u32), Cyclotomic)]) -> Polynomial {
    Polynomial::from_terms(
        3,
        MonomialOrder::Lex,
        terms
            .iter()
            .map(|((p, q, e), c)| (Monomial(vec![*p, *q, *e]), c.clone())),
    )
}

/// deg(F_j | E_i) for nontrivial i, j, from the transition exponent of
/// the isotypic generator between the two charts covering E_i. On the
/// b != 0 chart the rho_j piece is generated by x^j (j <= i-1) or
/// y^{n-j} (j >= i), on the a != 0 chart by x^j (j <= i) or y^{n-j}
/// (j >= i+1); the normal form of the second generator against the
/// restricted chart ideal exposes the power of the affine coordinate.
pub fn tautological_degrees(n: u64) -> Result<Vec<Vec<i64>>> {
    if n < 2 {
        return Err(Error::InvalidGroup("toric resolution needs n >= 2".into()));
    }
    let nn = n as u32;
    let one = Cyclotomic::one();
    let mut matrix = vec![vec![0i64; (n - 1) as usize]; (n - 1) as usize];
    for i in 1..nn {
        // chart U_{i-1} restricted to t = 0, with s the coordinate a/b:
        // x^i - s y^{n-i}, xy, y^{n-i+1}
        let restricted = vec![
            xys_poly(&[((i, 0, 0), one.clone()), ((0, nn - i, 1), -&one)]),
            xys_poly(&[((1, 1, 0), one.clone())]),
            xys_poly(&[((0, nn - i + 1, 0), one.clone())]),
        ];
        let gb = buchberger(&restricted);
        for j in 1..nn {
            let gen_b = if j <= i {
                xys_poly(&[((j, 0, 0), one.clone())])
            } else {
                xys_poly(&[((0, nn - j, 0), one.clone())])
            };
            let gen_a_monomial: (u32, u32) = if j <= i - 1 { (j, 0) } else { (0, nn - j) };
            let nf = normal_form(&gen_b, &gb);
            // expect exactly s^e * (the other chart's generator)
            if nf.num_terms() != 1 {
                return Err(Error::Verification(format!(
                    "transition of rho_{j} along E_{i} is not monomial: {nf}"
                )));
            }
            let (m, c) = nf.terms().next().unwrap();
            if (m.0[0], m.0[1]) != gen_a_monomial || !c.is_one() {
                return Err(Error::Verification(format!(
                    "transition of rho_{j} along E_{i} is {nf}, expected a power of s times x^{}y^{}",
                    gen_a_monomial.0, gen_a_monomial.1
                )));
            }
            matrix[(j - 1) as usize][(i - 1) as usize] = m.0[2] as i64;
        }
    }
    Ok(matrix)
}

// ---------------------------------------------------------------------
// the full cyclic cross-check
// ---------------------------------------------------------------------

fn fixed_sample_pairs() -> Vec<(i64, i64)> {
    vec![(1, 1), (1, 2), (2, 1)]
}

fn fixed_generic_points() -> Vec<(i64, i64)> {
    vec![(1, 1), (2, 3), (5, 2), (1, 7), (3, 4)]
}

/// Verify the cyclic McKay correspondence end to end for one of the two
/// cyclic forms: fan geometry, graph isomorphism under V_i <-> E_i,
/// cluster dimensions and characters, the stratification criterion at
/// chart origins and interior samples, and the tautological degree
/// matrix.
pub fn verify_mckay_cyclic(n: u64, form: &GaloisForm) -> Result<Report> {
    let GroupId::Cyclic(group_n) = form.group else {
        return Err(Error::InvalidForm(
            "cyclic verification needs a cyclic form".into(),
        ));
    };
    if group_n != n {
        return Err(Error::InvalidForm(format!(
            "form is for n = {group_n}, resolution for n = {n}"
        )));
    }
    if form.kind == FormKind::TwistedBD {
        return Err(Error::InvalidForm("twisted form is not cyclic".into()));
    }
    let mut report = Report::new(format!("cyclic McKay correspondence, n = {n}, {:?}", form.kind));

    let fan = build_fan(n)?;
    report.check("fan cones unimodular in N'", true, "checked in build_fan");
    let selfints = self_intersections(&fan)?;
    report.check(
        "self-intersections all -2",
        selfints.iter().all(|&k| k == -2),
        format!("{selfints:?}"),
    );

    // representation side
    let ctx = FoldContext::new(form.clone())?;
    let rep_graph = graphs::build_from_context(&ctx, false)?;

    // geometric side
    let constant_action = |i: u64| n - i;
    let ray_action: Option<&dyn Fn(u64) -> u64> = match form.kind {
        FormKind::MuCyclic => None,
        _ => Some(&constant_action),
    };
    let int_graph = intersection_graph(&fan, ray_action)?;

    // orbit compatibility: the fan action i -> n-i matches the character
    // action rho_j -> rho_{n-j} under the index bijection
    let rep_orbits: Vec<Vec<usize>> = ctx
        .orbits
        .orbits
        .iter()
        .filter(|o| !o.contains(&ctx.table.trivial_index))
        .cloned()
        .collect();
    let ray_parts = ray_orbits(n, ray_action);
    let geo_orbits: Vec<Vec<usize>> = ray_parts
        .orbits
        .iter()
        .map(|o| o.iter().map(|&i| i + 1).collect())
        .collect();
    report.check(
        "fan orbits match character orbits",
        rep_orbits == geo_orbits,
        format!("characters {rep_orbits:?} vs curves {geo_orbits:?}"),
    );

    // the index bijection V_i <-> E_i is a graph isomorphism
    let identity: Vec<usize> = (0..rep_graph.num_vertices()).collect();
    let iso = rep_orbits == geo_orbits
        && graphs::isomorphic_via(&rep_graph, &int_graph, &identity);
    report.check(
        "graphs isomorphic via V_i <-> E_i",
        iso,
        if iso {
            String::new()
        } else {
            format!(
                "representation side {} vs intersection side {}",
                graphs::emit(&rep_graph, graphs::EmitFormat::Json),
                graphs::emit(&int_graph, graphs::EmitFormat::Json)
            )
        },
    );

    // clusters: chart origins and generic points
    for chart in 0..n {
        let origin = cluster_ideal_at(n, chart, &Cyclotomic::zero(), &Cyclotomic::zero())?;
        let r = verify_cluster(&origin, n);
        report.check(
            format!("cluster at chart {chart} origin"),
            r.pass(),
            summary(&r),
        );
        for (sv, tv) in fixed_generic_points() {
            let ideal = cluster_ideal_at(
                n,
                chart,
                &Cyclotomic::from_int(sv),
                &Cyclotomic::from_int(tv),
            )?;
            let r = verify_cluster(&ideal, n);
            report.check(
                format!("cluster at chart {chart}, (s,t) = ({sv},{tv})"),
                r.pass(),
                summary(&r),
            );
        }
    }

    // stratification at chart origins: V(I) must name exactly the curves
    // through the point
    for chart in 0..n {
        let ideal = cluster_ideal_at(n, chart, &Cyclotomic::zero(), &Cyclotomic::zero())?;
        let v = v_of_i(&ideal, n)?;
        let expected: Vec<u64> = match chart {
            0 => vec![1],
            c if c == n - 1 => vec![n - 1],
            c => vec![c, c + 1],
        };
        let mut got = v.grades();
        got.sort_unstable();
        report.check(
            format!("V(I) at chart {chart} origin"),
            got == expected,
            format!("grades {got:?}, expected {expected:?}"),
        );
    }

    // stratification at interior samples of every curve
    for curve in 1..n {
        for (av, bv) in fixed_sample_pairs() {
            let ideal = restrict_to_curve(
                n,
                curve,
                &Cyclotomic::from_int(av),
                &Cyclotomic::from_int(bv),
            )?;
            let r = verify_cluster(&ideal, n);
            let v = v_of_i(&ideal, n)?;
            let ok = r.pass() && v.grades() == vec![curve] && v.total_dim() == 1;
            report.check(
                format!("V(I) at ({av}:{bv}) on E_{curve}"),
                ok,
                format!("V(I) characters {:?}", v.characters),
            );
        }
    }

    // tautological degrees specialize to the identity, and agree with
    // dim Hom(rho_i, rho_j)
    let degrees = tautological_degrees(n)?;
    let mut identity_ok = true;
    let mut hom_ok = true;
    for i in 0..(n - 1) as usize {
        for j in 0..(n - 1) as usize {
            let expected = i64::from(i == j);
            if degrees[i][j] != expected {
                identity_ok = false;
            }
            let hom = graphs::hom_dim_plain(
                &ctx.table.rows[i + 1],
                &ctx.table.rows[j + 1],
                &ctx.table,
            )? as i64;
            if degrees[i][j] != hom {
                hom_ok = false;
            }
        }
    }
    report.check("tautological degree matrix is the identity", identity_ok, "");
    report.check(
        "degree matrix equals dim Hom(rho_i, rho_j)",
        hom_ok,
        "",
    );

    Ok(report)
}

fn summary(r: &Report) -> String {
    if r.pass() {
        String::new()
    } else {
        r.items
            .iter()
            .filter(|i| !i.pass)
            .map(|i| format!("{}: {}", i.name, i.detail))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::FieldSpec;

    fn c(v: i64) -> Cyclotomic {
        Cyclotomic::from_int(v)
    }

    #[test]
    fn fan_n2_rays_and_charts() {
        let fan = build_fan(2).unwrap();
        assert_eq!(fan.rays, vec![(2, 0), (1, 1), (0, 2)]);
        // s_0 = x1/x2, t_0 = x2^2
        assert_eq!(fan.charts[0], ((1, -1), (0, 2)));
        assert_eq!(fan.charts[1], ((2, 0), (-1, 1)));
        assert_eq!(self_intersections(&fan).unwrap(), vec![-2]);
    }

    #[test]
    fn fan_chart_monomials_match_displayed_formulas() {
        for n in 2..=9u64 {
            let fan = build_fan(n).unwrap();
            for i in 0..n as i64 {
                let (s, t) = fan.charts[i as usize];
                assert_eq!(s, (i + 1, i + 1 - n as i64), "s_{i} for n = {n}");
                assert_eq!(t, (-i, n as i64 - i), "t_{i} for n = {n}");
            }
        }
    }

    #[test]
    fn self_intersections_uniformly_minus_two() {
        for n in 2..=12 {
            let fan = build_fan(n).unwrap();
            assert!(self_intersections(&fan).unwrap().iter().all(|&k| k == -2));
        }
    }

    #[test]
    fn curves_carry_chart_covers() {
        let fan = build_fan(4).unwrap();
        let curves = fan.curves().unwrap();
        assert_eq!(curves.len(), 3);
        assert_eq!(
            curves[1],
            ExceptionalCurve {
                index: 2,
                charts: (1, 2),
                self_intersection: -2
            }
        );
    }

    #[test]
    fn intersection_graph_shapes() {
        let fan = build_fan(5).unwrap();
        // split: chain of 4 curves
        let g = intersection_graph(&fan, None).unwrap();
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(g.edges(0, 1), 1);
        assert_eq!(g.edges(1, 2), 1);
        assert_eq!(g.edges(0, 2), 0);
        assert!(g.adjacency.iter().enumerate().all(|(i, r)| r[i] == 0));
        // folded: two doubled vertices, loop where the middle pair meets
        let action = |i: u64| 5 - i;
        let folded = intersection_graph(&fan, Some(&action)).unwrap();
        assert_eq!(folded.num_vertices(), 2);
        assert_eq!(folded.vertices[0].mult, 2);
        assert_eq!(folded.edges(0, 1), 2);
        assert_eq!(folded.loops(1), 1);
        // single curve for n = 2
        let fan2 = build_fan(2).unwrap();
        let g2 = intersection_graph(&fan2, None).unwrap();
        assert_eq!(g2.num_vertices(), 1);
        assert_eq!(g2.loops(0), 0);
    }

    #[test]
    fn cluster_ideal_forms() {
        // i = 1, n = 3 at the origin: x^2, xy, y^2
        let ideal = cluster_ideal_at(3, 1, &Cyclotomic::zero(), &Cyclotomic::zero()).unwrap();
        let gb = ideal.groebner();
        let qb = quotient_basis(gb);
        assert_eq!(qb.dimension(), Some(3));
        let r = verify_cluster(&ideal, 3);
        assert!(r.pass(), "{r}");
        // i = 0 family: x - s y^{n-1}, xy - st, y^n - t
        let ideal = cluster_ideal_at(3, 0, &c(2), &c(3)).unwrap();
        let r = verify_cluster(&ideal, 3);
        assert!(r.pass(), "{r}");
    }

    #[test]
    fn restriction_ideal_dimension_three() {
        let ideal = restrict_to_curve(3, 1, &c(1), &c(1)).unwrap();
        let r = verify_cluster(&ideal, 3);
        assert!(r.pass(), "{r}");
        assert!(restrict_to_curve(3, 1, &c(0), &c(0)).is_err());
    }

    #[test]
    fn v_of_i_at_origin_and_interior() {
        // chart-1 origin of n = 3: two distinct characters rho_1, rho_2
        let ideal = cluster_ideal_at(3, 1, &Cyclotomic::zero(), &Cyclotomic::zero()).unwrap();
        let v = v_of_i(&ideal, 3).unwrap();
        assert_eq!(v.characters, vec![(1, 1), (2, 1)]);
        assert!(v.meets(1) && v.meets(2) && !v.meets(0));
        // interior point of E_1: irreducible rho_1
        let ideal = restrict_to_curve(3, 1, &c(1), &c(1)).unwrap();
        let v = v_of_i(&ideal, 3).unwrap();
        assert_eq!(v.characters, vec![(1, 1)]);
        // an ideal without the invariant ideal is rejected
        let bad = IdealBasis::new(vec![xy_poly(&[((1, 0), Cyclotomic::one())])]);
        assert!(matches!(v_of_i(&bad, 3), Err(Error::NotOnFiber(_))));
    }

    #[test]
    fn tautological_degrees_identity() {
        assert_eq!(tautological_degrees(2).unwrap(), vec![vec![1]]);
        assert_eq!(
            tautological_degrees(3).unwrap(),
            vec![vec![1, 0], vec![0, 1]]
        );
        for n in 4..=8 {
            let m = tautological_degrees(n).unwrap();
            for (i, row) in m.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    assert_eq!(v, i64::from(i == j), "n = {n}, entry ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn verify_mckay_small_cases() {
        for n in [2u64, 3, 5] {
            for kind in [FormKind::MuCyclic, FormKind::Constant] {
                let form =
                    GaloisForm::new(GroupId::Cyclic(n), FieldSpec::real_subfield(n), kind)
                        .unwrap();
                let report = verify_mckay_cyclic(n, &form).unwrap();
                assert!(report.pass(), "n = {n}, {kind:?}:\n{report}");
            }
        }
    }

    #[test]
    fn mu_and_constant_folds_differ_for_n5() {
        let fan = build_fan(5).unwrap();
        let split = intersection_graph(&fan, None).unwrap();
        let action = |i: u64| 5 - i;
        let folded = intersection_graph(&fan, Some(&action)).unwrap();
        assert_eq!(crate::graphs::classify(&split).unwrap().name(), "(A_4)");
        assert_eq!(crate::graphs::classify(&folded).unwrap().name(), "(A_4)'");
    }

    #[test]
    fn diagonalizing_coordinates_swap_under_galois() {
        // with the action of [[0,-1],[1, xi+xi^-1]] on row vectors, the
        // linear forms x1 - xi x2 and x1 - xi^-1 x2 are eigenvectors
        // with eigenvalues xi, xi^-1, and conjugation swaps them;
        // checked symbolically for n = 3
        let xi = Cyclotomic::zeta(3);
        let xi_inv = Cyclotomic::zeta_pow(3, -1);
        let two_c = &xi + &xi_inv;
        // the substitution x1 -> x2, x2 -> -x1 + 2c x2 on a linear form
        // (alpha, beta) |-> (-beta, alpha + 2c beta)
        let apply = |alpha: &Cyclotomic, beta: &Cyclotomic| -> (Cyclotomic, Cyclotomic) {
            (-beta, alpha + &(&two_c * beta))
        };
        let x1p = (Cyclotomic::one(), -&xi);
        let x2p = (Cyclotomic::one(), -&xi_inv);
        let t1 = apply(&x1p.0, &x1p.1);
        assert_eq!(t1.0, &xi * &x1p.0);
        assert_eq!(t1.1, &xi * &x1p.1);
        let t2 = apply(&x2p.0, &x2p.1);
        assert_eq!(t2.0, &xi_inv * &x2p.0);
        assert_eq!(t2.1, &xi_inv * &x2p.1);
        // gamma: conjugate the coefficients
        assert_eq!((x1p.0.conj(), x1p.1.conj()), x2p);
    }
}
