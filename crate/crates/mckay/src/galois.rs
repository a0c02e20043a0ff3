//! Field specifications K inside Q(zeta_m), the supported K-forms of the
//! finite subgroup schemes, and the induced Galois action on irreducible
//! characters together with its orbit data.
//!
//! Three form kinds are supported: the constant form of any family (the
//! Galois group twists character values), the mu-type cyclic form (all
//! characters defined over K, trivial action), and the twisted binary
//! dihedral form over Q(eps + eps^-1) where the nontrivial automorphism
//! acts on points by sigma -> sigma^-1, tau -> tau * sigma.

use num_integer::Integer;

use crate::exact::{subgroup_generated, Cyclotomic};
use crate::groups::{character_table, CharacterTable, Character, GroupId, NaturalRep};
use crate::{Error, Result};

/// K = fixed field of the subgroup of (Z/m)* generated by `gens`,
/// acting on Q(zeta_m). Empty `gens` means K = Q(zeta_m) itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub conductor: u64,
    pub gens: Vec<u64>,
}

impl FieldSpec {
    pub fn new(conductor: u64, gens: Vec<u64>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidField("conductor must be positive".into()));
        }
        let spec = FieldSpec { conductor, gens };
        spec.subgroup()?; // validates coprimality
        Ok(spec)
    }

    pub fn rationals() -> Self {
        FieldSpec {
            conductor: 1,
            gens: Vec::new(),
        }
    }

    pub fn cyclotomic(m: u64) -> Self {
        FieldSpec {
            conductor: m,
            gens: Vec::new(),
        }
    }

    /// Q(zeta_m + zeta_m^-1).
    pub fn real_subfield(m: u64) -> Self {
        if m <= 2 {
            FieldSpec::rationals()
        } else {
            FieldSpec {
                conductor: m,
                gens: vec![m - 1],
            }
        }
    }

    /// The enumerated subgroup generated by `gens` in (Z/m)*.
    pub fn subgroup(&self) -> Result<Vec<u64>> {
        subgroup_generated(self.conductor, &self.gens)
    }

    /// [K : Q] = phi(m) divided by the order of the fixing subgroup.
    pub fn degree(&self) -> Result<u64> {
        let phi = crate::exact::phi::euler_phi(self.conductor);
        Ok(phi / self.subgroup()?.len() as u64)
    }

    pub fn contains(&self, v: &Cyclotomic) -> Result<bool> {
        let Some(w) = v.try_conductor(self.conductor) else {
            return Ok(false);
        };
        w.is_in_fixed_field(&self.gens)
    }

    /// Abelian fields are totally real or totally complex; K is real iff
    /// complex conjugation restricts trivially, i.e. -1 fixes K.
    pub fn is_totally_real(&self) -> Result<bool> {
        if self.conductor <= 2 {
            return Ok(true);
        }
        Ok(self.subgroup()?.contains(&(self.conductor - 1)))
    }

    /// Gal(Q(zeta_M)/K) for a multiple M of the conductor: the residues
    /// of (Z/M)* restricting into the fixing subgroup on Q(zeta_m).
    pub fn galois_group_in(&self, big_m: u64) -> Result<Vec<u64>> {
        assert!(big_m % self.conductor == 0);
        let m = self.conductor;
        let h = self.subgroup()?;
        Ok((1..=big_m)
            .filter(|k| k.gcd(&big_m) == 1)
            .filter(|k| m == 1 || h.contains(&(k % m)))
            .collect())
    }

    /// Coset representatives of the fixing subgroup in (Z/m)*: one per embedding of K.
    pub fn embedding_representatives(&self) -> Result<Vec<u64>> {
        let m = self.conductor;
        if m == 1 {
            return Ok(vec![1]);
        }
        let h = self.subgroup()?;
        let mut reps = Vec::new();
        let mut covered = vec![false; m as usize];
        for k in 1..m {
            if k.gcd(&m) != 1 || covered[k as usize] {
                continue;
            }
            reps.push(k);
            for s in &h {
                covered[((k * s) % m) as usize] = true;
            }
        }
        Ok(reps)
    }

    /// CLI syntax `m=<m>,H=<k1,k2,...>`; empty H is allowed.
    pub fn parse(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("bad field spec '{s}' (expected m=<m>,H=<k1,...>)"));
        let rest = s.strip_prefix("m=").ok_or_else(err)?;
        let (m_str, h_str) = rest.split_once(",H=").ok_or_else(err)?;
        let m: u64 = m_str.trim().parse().map_err(|_| err())?;
        let mut gens = Vec::new();
        for part in h_str.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            gens.push(part.parse().map_err(|_| err())?);
        }
        FieldSpec::new(m, gens)
    }

    pub fn describe(&self) -> String {
        if self.degree().map_or(false, |d| d == 1) {
            return "Q".to_string();
        }
        let m = self.conductor;
        let h = self.subgroup().unwrap_or_default();
        if h.len() <= 1 {
            return format!("Q(zeta_{m})");
        }
        if self.clone() == FieldSpec::real_subfield(m) {
            return format!("Q(zeta_{m} + zeta_{m}^-1)");
        }
        format!(
            "fixed field of <{}> in Q(zeta_{m})",
            self.gens
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Constant,
    MuCyclic,
    TwistedBD,
}

impl FormKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "constant" => Ok(FormKind::Constant),
            "mu" => Ok(FormKind::MuCyclic),
            "twisted" => Ok(FormKind::TwistedBD),
            other => Err(Error::Parse(format!(
                "unknown form '{other}' (expected constant|mu|twisted)"
            ))),
        }
    }
}

/// A K-form of one of the group schemes: a group, a field and a form kind,
/// validated at construction.
#[derive(Clone, Debug)]
pub struct GaloisForm {
    pub group: GroupId,
    pub field: FieldSpec,
    pub kind: FormKind,
}

impl GaloisForm {
    pub fn new(group: GroupId, field: FieldSpec, kind: FormKind) -> Result<Self> {
        group.validate()?;
        let form = GaloisForm { group, field, kind };
        form.validate()?;
        Ok(form)
    }

    fn validate(&self) -> Result<()> {
        match self.kind {
            FormKind::Constant => {
                // trace condition: the natural character takes values in K
                let table = character_table(self.group)?;
                for v in table.natural_character() {
                    if !self.field.contains(&v)? {
                        return Err(Error::InvalidForm(format!(
                            "constant form of {} needs the natural trace {} inside {}",
                            self.group,
                            v,
                            self.field.describe()
                        )));
                    }
                }
                Ok(())
            }
            FormKind::MuCyclic => {
                let GroupId::Cyclic(n) = self.group else {
                    return Err(Error::InvalidForm(
                        "mu form exists only for the cyclic family".into(),
                    ));
                };
                self.expect_real_subfield(n, "mu-cyclic")
            }
            FormKind::TwistedBD => {
                let GroupId::BinaryDihedral(n) = self.group else {
                    return Err(Error::InvalidForm(
                        "twisted form exists only for the binary dihedral family".into(),
                    ));
                };
                self.expect_real_subfield(4 * n, "twisted binary dihedral")
            }
        }
    }

    /// K must equal Q(zeta_m + zeta_m^-1): contain the trace and have the
    /// matching degree.
    fn expect_real_subfield(&self, m: u64, what: &str) -> Result<()> {
        let trace = &Cyclotomic::zeta(m) + &Cyclotomic::zeta_pow(m, -1);
        let expected_degree = FieldSpec::real_subfield(m).degree()?;
        if !self.field.contains(&trace)? || self.field.degree()? != expected_degree {
            return Err(Error::InvalidForm(format!(
                "{what} form is defined over Q(zeta_{m} + zeta_{m}^-1), got {}",
                self.field.describe()
            )));
        }
        Ok(())
    }

    pub fn table(&self) -> Result<CharacterTable> {
        character_table(self.group)
    }
}

/// The permutation action of Gamma on the rows of a character table.
#[derive(Clone, Debug)]
pub struct CharacterAction {
    /// Residues of Gamma inside (Z/M)*, M = lcm(field conductor, exponent).
    pub gamma: Vec<u64>,
    /// Arithmetic conductor M the residues refer to.
    pub modulus: u64,
    /// Row permutation per Gamma element, aligned with `gamma`.
    pub perms: Vec<Vec<usize>>,
    /// Class permutation per Gamma element (identity except TwistedBD).
    pub class_perms: Vec<Vec<usize>>,
}

impl CharacterAction {
    pub fn identity(table: &CharacterTable) -> Self {
        CharacterAction {
            gamma: vec![1],
            modulus: 1,
            perms: vec![(0..table.num_rows()).collect()],
            class_perms: vec![(0..table.num_classes()).collect()],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perms
            .iter()
            .all(|p| p.iter().enumerate().all(|(i, &j)| i == j))
    }
}

/// The class permutation induced on BD_n classes by the point action
/// sigma -> sigma^-1, tau -> tau sigma: sigma-classes are fixed, the tau
/// and tau*sigma classes swap.
fn twisted_bd_class_perm(table: &CharacterTable) -> Vec<usize> {
    let k = table.num_classes();
    let mut perm: Vec<usize> = (0..k).collect();
    perm.swap(k - 2, k - 1);
    perm
}

/// Compute the action of Gamma on the rows of the table for the given
/// form. The transformed character of every row must land exactly on a
/// row of the table; anything else is an invariant violation.
pub fn character_action(form: &GaloisForm) -> Result<CharacterAction> {
    let table = form.table()?;
    if form.kind == FormKind::MuCyclic {
        // all irreducibles of the mu-form are defined over K
        return Ok(CharacterAction::identity(&table));
    }
    let modulus = form.field.conductor.lcm(&form.group.exponent());
    let gamma = form.field.galois_group_in(modulus)?;
    let identity_classes: Vec<usize> = (0..table.num_classes()).collect();
    let mut perms = Vec::with_capacity(gamma.len());
    let mut class_perms = Vec::with_capacity(gamma.len());
    for &g in &gamma {
        let class_perm = match form.kind {
            FormKind::TwistedBD => {
                // the nontrivial automorphism is eps -> eps^-1
                let fc = form.field.conductor;
                if g % fc == fc - 1 {
                    twisted_bd_class_perm(&table)
                } else {
                    identity_classes.clone()
                }
            }
            _ => identity_classes.clone(),
        };
        let mut perm = Vec::with_capacity(table.num_rows());
        for (r, row) in table.rows.iter().enumerate() {
            let transformed: Vec<Cyclotomic> = (0..table.num_classes())
                .map(|c| row[class_perm[c]].galois(g as i64))
                .collect::<Result<_>>()?;
            let target = table
                .rows
                .iter()
                .position(|cand| *cand == transformed)
                .ok_or_else(|| {
                    Error::NoMatchingRow(format!(
                        "gamma = {g} applied to row {}",
                        table.row_labels[r]
                    ))
                })?;
            perm.push(target);
        }
        // bijectivity
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if seen[p] {
                return Err(Error::CorruptedTable(format!(
                    "action of gamma = {g} is not a permutation"
                )));
            }
            seen[p] = true;
        }
        if perm[table.trivial_index] != table.trivial_index {
            return Err(Error::CorruptedTable(
                "trivial character moved by the action".into(),
            ));
        }
        perms.push(perm);
        class_perms.push(class_perm);
    }
    let action = CharacterAction {
        gamma,
        modulus,
        perms,
        class_perms,
    };
    // the natural character is defined over K, so its class function is
    // fixed by every gamma
    let natural = table.natural_character();
    for (idx, &g) in action.gamma.iter().enumerate() {
        let moved: Vec<Cyclotomic> = (0..table.num_classes())
            .map(|c| natural[action.class_perms[idx][c]].galois(g as i64))
            .collect::<Result<_>>()?;
        if moved != natural {
            return Err(Error::InvalidForm(format!(
                "natural character not fixed by gamma = {g}"
            )));
        }
    }
    Ok(action)
}

/// Partition of the table rows into Gamma-orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn orbit_of(&self, row: usize) -> usize {
        self.orbits
            .iter()
            .position(|o| o.contains(&row))
            .expect("row in some orbit")
    }
}

/// Orbits of the action, each sorted, listed by least element; verifies
/// the multiplicity-freeness <chi_O, chi_O> = |O| for every orbit.
pub fn orbits(action: &CharacterAction, table: &CharacterTable) -> Result<OrbitPartition> {
    let n = table.num_rows();
    let mut assigned = vec![usize::MAX; n];
    let mut orbits_vec: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if assigned[start] != usize::MAX {
            continue;
        }
        let idx = orbits_vec.len();
        let mut orbit = vec![start];
        assigned[start] = idx;
        let mut frontier = vec![start];
        while let Some(r) = frontier.pop() {
            for perm in &action.perms {
                let s = perm[r];
                if assigned[s] == usize::MAX {
                    assigned[s] = idx;
                    orbit.push(s);
                    frontier.push(s);
                }
            }
        }
        orbit.sort_unstable();
        orbits_vec.push(orbit);
    }
    let partition = OrbitPartition { orbits: orbits_vec };
    for orbit in &partition.orbits {
        let chi = orbit_sum(orbit, table);
        let ip = table.inner_product(&chi, &chi);
        if ip != Cyclotomic::from_int(orbit.len() as i64) {
            return Err(Error::Verification(format!(
                "orbit {orbit:?} has <chi,chi> = {ip}, expected {}",
                orbit.len()
            )));
        }
    }
    Ok(partition)
}

/// Sum of the orbit's character rows.
pub fn orbit_sum(orbit: &[usize], table: &CharacterTable) -> Character {
    let mut acc = vec![Cyclotomic::zero(); table.num_classes()];
    for &r in orbit {
        for (a, v) in acc.iter_mut().zip(&table.rows[r]) {
            *a = &*a + v;
        }
    }
    acc
}

/// The character of the K-irreducible attached to an orbit. For constant
/// forms every value must lie in K; a failure means the form was
/// specified wrongly.
pub fn rational_character(
    orbit: &[usize],
    table: &CharacterTable,
    form: &GaloisForm,
) -> Result<Character> {
    let chi = orbit_sum(orbit, table);
    if form.kind == FormKind::Constant {
        for v in &chi {
            if !form.field.contains(v)? {
                return Err(Error::InvalidForm(format!(
                    "orbit sum value {v} outside {}",
                    form.field.describe()
                )));
            }
        }
    }
    Ok(chi)
}

/// Everything downstream folding needs: the table, the action and the
/// orbit partition of a form.
#[derive(Clone, Debug)]
pub struct FoldContext {
    pub form: GaloisForm,
    pub table: CharacterTable,
    pub action: CharacterAction,
    pub orbits: OrbitPartition,
}

impl FoldContext {
    pub fn new(form: GaloisForm) -> Result<Self> {
        let table = form.table()?;
        let action = character_action(&form)?;
        let orbits = orbits(&action, &table)?;
        Ok(FoldContext {
            form,
            table,
            action,
            orbits,
        })
    }

    /// Indices of the natural representation's orbit members.
    pub fn natural_rows(&self) -> Vec<usize> {
        match self.table.natural {
            NaturalRep::Single(i) => vec![i],
            NaturalRep::Pair(i, j) => {
                if i == j {
                    vec![i]
                } else {
                    vec![i, j]
                }
            }
        }
    }
}
