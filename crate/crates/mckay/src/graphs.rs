//! Representation graphs over C and over K, the bilinear form, folding
//! along Galois orbits, classification against the diagram catalog and
//! DOT/JSON emission.
//!
//! Edge counts follow the Hom-dimension definition: distinct vertices
//! carry dim Hom(V_i, V tensor V_j) edges and each vertex carries half
//! of dim Hom(V_i, V tensor V_i) loops. Folded graphs are computed two
//! ways — orbit summation of split edges, and the definition applied to
//! orbit-sum characters — and the test suite checks the two agree.

use serde::{Deserialize, Serialize};

use crate::exact::Cyclotomic;
use crate::galois::{CharacterAction, FoldContext, OrbitPartition};
use crate::groups::{CharacterTable, Character};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphVertex {
    pub label: String,
    pub mult: u32,
    pub degree: u32,
    pub trivial: bool,
}

/// Weighted multigraph: symmetric adjacency with off-diagonal edge
/// counts and diagonal loop counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McKayGraph {
    pub vertices: Vec<GraphVertex>,
    pub adjacency: Vec<Vec<u32>>,
    pub extended: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
}

impl McKayGraph {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn loops(&self, v: usize) -> u32 {
        self.adjacency[v][v]
    }

    pub fn edges(&self, u: usize, v: usize) -> u32 {
        self.adjacency[u][v]
    }

    fn signature(&self, v: usize) -> (u32, u32, u32, bool, Vec<u32>) {
        let mut incident: Vec<u32> = (0..self.num_vertices())
            .filter(|&u| u != v)
            .map(|u| self.adjacency[v][u])
            .filter(|&c| c > 0)
            .collect();
        incident.sort_unstable();
        (
            self.vertices[v].mult,
            self.vertices[v].degree,
            self.loops(v),
            self.vertices[v].trivial,
            incident,
        )
    }
}

/// dim Hom(chi_u, V tensor chi_v) computed as the inner product
/// <chi_u, chi_V * chi_v>; must come out a non-negative integer.
pub fn hom_dim_chars(
    u: &[Cyclotomic],
    v: &[Cyclotomic],
    table: &CharacterTable,
) -> Result<u32> {
    let natural = table.natural_character();
    let vv = CharacterTable::pointwise(&natural, v);
    let ip = table.inner_product(u, &vv);
    as_count(&ip, "Hom dimension")
}

/// dim Hom(chi_u, chi_v) = <chi_u, chi_v>.
pub fn hom_dim_plain(
    u: &[Cyclotomic],
    v: &[Cyclotomic],
    table: &CharacterTable,
) -> Result<u32> {
    let ip = table.inner_product(u, v);
    as_count(&ip, "Hom dimension")
}

fn as_count(ip: &Cyclotomic, what: &str) -> Result<u32> {
    let q = ip
        .as_rational()
        .filter(|q| q.is_integer())
        .ok_or_else(|| Error::CorruptedTable(format!("{what} {ip} is not an integer")))?;
    u32::try_from(q.to_integer())
        .map_err(|_| Error::CorruptedTable(format!("{what} {ip} is negative or huge")))
}

/// dim Hom(V_i, V tensor V_j) for table rows, with the tensor factor
/// pinned to the table's natural 2-dimensional character. Passing any
/// other class function for `v` is rejected.
pub fn hom_dimension(
    i: usize,
    j: usize,
    v: &[Cyclotomic],
    table: &CharacterTable,
) -> Result<u32> {
    if *v != table.natural_character() {
        return Err(Error::CorruptedTable(
            "tensor factor must be the natural 2-dimensional character".into(),
        ));
    }
    hom_dim_chars(&table.rows[i], &table.rows[j], table)
}

fn split_adjacency(table: &CharacterTable) -> Result<Vec<Vec<u32>>> {
    let n = table.num_rows();
    let mut adj = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in i..n {
            let h = hom_dim_chars(&table.rows[i], &table.rows[j], table)?;
            if i == j {
                if h % 2 != 0 {
                    return Err(Error::CorruptedTable(format!(
                        "odd loop dimension {h} at row {}",
                        table.row_labels[i]
                    )));
                }
                adj[i][i] = h / 2;
            } else {
                adj[i][j] = h;
                adj[j][i] = h;
            }
        }
    }
    Ok(adj)
}

fn singleton_partition(n: usize) -> OrbitPartition {
    OrbitPartition {
        orbits: (0..n).map(|i| vec![i]).collect(),
    }
}

/// Build the (extended) representation graph. With no action the split
/// graph over C; with an action the folded graph over K: orbit vertices
/// with multiplicity the orbit size, edge counts summed over orbit pairs
/// and loops computed from the definition on orbit-sum characters.
pub fn build_graph(
    table: &CharacterTable,
    action: Option<&CharacterAction>,
    extended: bool,
) -> Result<McKayGraph> {
    let partition = match action {
        None => singleton_partition(table.num_rows()),
        Some(a) => crate::galois::orbits(a, table)?,
    };
    fold_by_partition(table, &partition, extended)
}

pub fn build_from_context(ctx: &FoldContext, extended: bool) -> Result<McKayGraph> {
    fold_by_partition(&ctx.table, &ctx.orbits, extended)
}

/// The folded graph of an explicit orbit partition of table rows.
pub fn fold_by_partition(
    table: &CharacterTable,
    partition: &OrbitPartition,
    extended: bool,
) -> Result<McKayGraph> {
    let split = split_adjacency(table)?;
    let orbits = &partition.orbits;
    let keep: Vec<usize> = (0..orbits.len())
        .filter(|&o| extended || !orbits[o].contains(&table.trivial_index))
        .collect();
    let mut vertices = Vec::with_capacity(keep.len());
    let mut adjacency = vec![vec![0u32; keep.len()]; keep.len()];
    for (a, &oa) in keep.iter().enumerate() {
        let orbit = &orbits[oa];
        let chi = crate::galois::orbit_sum(orbit, table);
        let degree = as_count(&chi[0], "degree")?;
        let label = orbit
            .iter()
            .map(|&r| table.row_labels[r].clone())
            .collect::<Vec<_>>()
            .join("+");
        vertices.push(GraphVertex {
            label,
            mult: orbit.len() as u32,
            degree,
            trivial: orbit.contains(&table.trivial_index),
        });
        // loops from the definition applied to the orbit-sum character
        let h = hom_dim_chars(&chi, &chi, table)?;
        if h % 2 != 0 {
            return Err(Error::CorruptedTable(format!(
                "odd loop dimension {h} on orbit {orbit:?}"
            )));
        }
        adjacency[a][a] = h / 2;
        // edges by orbit summation of the split graph
        for (b, &ob) in keep.iter().enumerate().skip(a + 1) {
            let mut count: u32 = 0;
            for &i in &orbits[oa] {
                for &j in &orbits[ob] {
                    count += split[i][j];
                }
            }
            adjacency[a][b] = count;
            adjacency[b][a] = count;
        }
    }
    Ok(McKayGraph {
        vertices,
        adjacency,
        extended,
        label: None,
    })
}

/// Folded edge counts recomputed directly from the Hom-dimension
/// definition on orbit-sum characters (the other route of the fold
/// consistency property).
pub fn fold_edges_by_characters(
    table: &CharacterTable,
    partition: &OrbitPartition,
) -> Result<Vec<Vec<u32>>> {
    let orbits = &partition.orbits;
    let sums: Vec<Character> = orbits
        .iter()
        .map(|o| crate::galois::orbit_sum(o, table))
        .collect();
    let k = orbits.len();
    let mut out = vec![vec![0u32; k]; k];
    for a in 0..k {
        for b in 0..k {
            if a != b {
                out[a][b] = hom_dim_chars(&sums[a], &sums[b], table)?;
            }
        }
    }
    Ok(out)
}

/// Decomposition multiplicities a_ij of W_i inside V tensor W_j (the
/// alternative edge definition, directed; a_ij <= dim Hom with equality
/// over algebraically closed fields).
pub fn multiplicity_matrix(
    table: &CharacterTable,
    partition: &OrbitPartition,
) -> Result<Vec<Vec<u32>>> {
    let orbits = &partition.orbits;
    let sums: Vec<Character> = orbits
        .iter()
        .map(|o| crate::galois::orbit_sum(o, table))
        .collect();
    let k = orbits.len();
    let mut out = vec![vec![0u32; k]; k];
    for i in 0..k {
        let endo = orbits[i].len() as u32;
        for j in 0..k {
            let h = hom_dim_chars(&sums[i], &sums[j], table)?;
            if h % endo != 0 {
                return Err(Error::CorruptedTable(format!(
                    "Hom dimension {h} not divisible by End dimension {endo}"
                )));
            }
            out[i][j] = h / endo;
        }
    }
    Ok(out)
}

/// The Z-bilinear form <W_i, W_j> = dim Hom(W_i, V x W_j) - 2 dim
/// Hom(W_i, W_j) on the K-irreducibles of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
}

pub fn bilinear_form(
    table: &CharacterTable,
    partition: &OrbitPartition,
) -> Result<BilinearForm> {
    let orbits = &partition.orbits;
    let sums: Vec<Character> = orbits
        .iter()
        .map(|o| crate::galois::orbit_sum(o, table))
        .collect();
    let labels: Vec<String> = orbits
        .iter()
        .map(|o| {
            o.iter()
                .map(|&r| table.row_labels[r].clone())
                .collect::<Vec<_>>()
                .join("+")
        })
        .collect();
    let k = orbits.len();
    let mut matrix = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in 0..k {
            let tensor = hom_dim_chars(&sums[i], &sums[j], table)? as i64;
            let plain = hom_dim_plain(&sums[i], &sums[j], table)? as i64;
            matrix[i][j] = tensor - 2 * plain;
        }
    }
    Ok(BilinearForm { labels, matrix })
}

/// (2 Id - A) d = 0 for split extended graphs, with the diagonal of A
/// counting each loop twice (the unhalved Hom dimension).
pub fn affine_kernel_check(g: &McKayGraph) -> bool {
    let n = g.num_vertices();
    (0..n).all(|i| {
        let mut acc: i64 = 2 * g.vertices[i].degree as i64;
        for j in 0..n {
            let a = if i == j {
                2 * g.adjacency[i][i] as i64
            } else {
                g.adjacency[i][j] as i64
            };
            acc -= a * g.vertices[j].degree as i64;
        }
        acc == 0
    })
}

// ---------------------------------------------------------------------
// isomorphism and classification
// ---------------------------------------------------------------------

/// Attribute-respecting graph isomorphism by backtracking; graphs here
/// never exceed about a dozen vertices.
pub fn graphs_isomorphic(a: &McKayGraph, b: &McKayGraph) -> bool {
    let n = a.num_vertices();
    if n != b.num_vertices() {
        return false;
    }
    let mut sig_a: Vec<_> = (0..n).map(|v| a.signature(v)).collect();
    let mut sig_b: Vec<_> = (0..n).map(|v| b.signature(v)).collect();
    sig_a.sort();
    sig_b.sort();
    if sig_a != sig_b {
        return false;
    }
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    backtrack(a, b, 0, &mut mapping, &mut used)
}

fn backtrack(
    a: &McKayGraph,
    b: &McKayGraph,
    v: usize,
    mapping: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = a.num_vertices();
    if v == n {
        return true;
    }
    for w in 0..n {
        if used[w] || a.signature(v) != b.signature(w) {
            continue;
        }
        let consistent = (0..v).all(|u| a.adjacency[v][u] == b.adjacency[w][mapping[u]]);
        if !consistent {
            continue;
        }
        mapping[v] = w;
        used[w] = true;
        if backtrack(a, b, v + 1, mapping, used) {
            return true;
        }
        mapping[v] = usize::MAX;
        used[w] = false;
    }
    false
}

/// Check that one explicit vertex bijection is a graph isomorphism.
pub fn isomorphic_via(a: &McKayGraph, b: &McKayGraph, mapping: &[usize]) -> bool {
    let n = a.num_vertices();
    if n != b.num_vertices() || mapping.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &m in mapping {
        if m >= n || seen[m] {
            return false;
        }
        seen[m] = true;
    }
    for i in 0..n {
        let (va, vb) = (&a.vertices[i], &b.vertices[mapping[i]]);
        if va.mult != vb.mult || va.trivial != vb.trivial {
            return false;
        }
        for j in 0..n {
            if a.adjacency[i][j] != b.adjacency[mapping[i]][mapping[j]] {
                return false;
            }
        }
    }
    true
}

/// The paper-style diagram label together with its Dynkin counterpart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramLabel {
    pub base: char,
    pub rank: usize,
    pub primes: u8,
}

impl DiagramLabel {
    pub fn new(base: char, rank: usize, primes: u8) -> Self {
        DiagramLabel { base, rank, primes }
    }

    pub fn name(&self) -> String {
        let primes = match self.primes {
            0 => "",
            1 => "'",
            _ => "''",
        };
        format!("({}_{}){}", self.base, self.rank, primes)
    }

    /// The Dynkin diagram of the same root datum: primed labels map to
    /// the non-simply-laced types.
    pub fn dynkin(&self) -> String {
        match (self.base, self.primes) {
            ('A', 0) => format!("A_{}", self.rank),
            // (A_n)' -> C_{ceil(n/2)}, with (A_2)' -> C_1 = A_1
            ('A', 1) => format!("C_{}", self.rank.div_ceil(2)),
            ('D', 0) => format!("D_{}", self.rank),
            ('D', 1) => format!("B_{}", self.rank - 1),
            ('D', 2) => "G_2".to_string(),
            ('E', 0) => format!("E_{}", self.rank),
            ('E', 1) => "F_4".to_string(),
            _ => format!("?{}_{}", self.base, self.rank),
        }
    }
}

fn cyclic_split(order: u64, extended: bool) -> Result<McKayGraph> {
    let table = crate::groups::character_table(crate::groups::GroupId::Cyclic(order))?;
    build_graph(&table, None, extended)
}

fn cyclic_folded(order: u64, extended: bool) -> Result<McKayGraph> {
    let table = crate::groups::character_table(crate::groups::GroupId::Cyclic(order))?;
    let n = order as usize;
    let perm: Vec<usize> = (0..n).map(|j| (n - j) % n).collect();
    let partition = partition_from_perm(&perm);
    fold_by_partition(&table, &partition, extended)
}

fn bd_split(n: u64, extended: bool) -> Result<McKayGraph> {
    let table = crate::groups::character_table(crate::groups::GroupId::BinaryDihedral(n))?;
    build_graph(&table, None, extended)
}

fn bd_tail_folded(n: u64, extended: bool) -> Result<McKayGraph> {
    let table = crate::groups::character_table(crate::groups::GroupId::BinaryDihedral(n))?;
    let mut perm: Vec<usize> = (0..table.num_rows()).collect();
    perm.swap(2, 3); // 1'' <-> 1'''
    let partition = partition_from_perm(&perm);
    fold_by_partition(&table, &partition, extended)
}

fn bd2_fully_folded(extended: bool) -> Result<McKayGraph> {
    let table = crate::groups::character_table(crate::groups::GroupId::BinaryDihedral(2))?;
    // S_3 orbit {1', 1'', 1'''}
    let partition = OrbitPartition {
        orbits: vec![vec![0], vec![1, 2, 3], vec![4]],
    };
    fold_by_partition(&table, &partition, extended)
}

fn bt_split(extended: bool) -> Result<McKayGraph> {
    let table = crate::groups::character_table(crate::groups::GroupId::BinaryTetrahedral)?;
    build_graph(&table, None, extended)
}

fn bt_folded(extended: bool) -> Result<McKayGraph> {
    let table = crate::groups::character_table(crate::groups::GroupId::BinaryTetrahedral)?;
    let partition = OrbitPartition {
        orbits: vec![vec![0], vec![1, 2], vec![3], vec![4], vec![5, 6]],
    };
    fold_by_partition(&table, &partition, extended)
}

fn partition_from_perm(perm: &[usize]) -> OrbitPartition {
    let n = perm.len();
    let mut assigned = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if assigned[start] != usize::MAX {
            continue;
        }
        let mut orbit = vec![start];
        assigned[start] = orbits.len();
        let mut cur = perm[start];
        while assigned[cur] == usize::MAX {
            assigned[cur] = orbits.len();
            orbit.push(cur);
            cur = perm[cur];
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    OrbitPartition { orbits }
}

/// Regenerate the catalog entries whose vertex count can match `g`, with
/// their labels. The catalog graphs are built from the definitions (the
/// split graphs of the five families and the orbit folds), never
/// transcribed from figures.
fn catalog_candidates(g: &McKayGraph) -> Result<Vec<(DiagramLabel, McKayGraph)>> {
    let v = g.num_vertices() as i64;
    let extended = g.extended;
    let ext = i64::from(extended);
    let mut out = Vec::new();
    // (A_n): cyclic of order n+1; extended graph has n+1 vertices
    let n_a = v - ext;
    if n_a >= 0 && (n_a >= 1 || extended) {
        out.push((
            DiagramLabel::new('A', n_a as usize, 0),
            cyclic_split(n_a as u64 + 1, extended)?,
        ));
    }
    // (A_n)': fold of the cyclic graph; nontrivial vertex count ceil(n/2)
    for n in [2 * (v - ext), 2 * (v - ext) - 1] {
        if n >= 2 {
            out.push((
                DiagramLabel::new('A', n as usize, 1),
                cyclic_folded(n as u64 + 1, extended)?,
            ));
        }
    }
    // (D_n): BD_{n-2}; extended graph has n+1 vertices
    let n_d = v - 1 + (1 - ext);
    if n_d >= 4 {
        out.push((
            DiagramLabel::new('D', n_d as usize, 0),
            bd_split(n_d as u64 - 2, extended)?,
        ));
    }
    // (D_n)': tail fold, one vertex fewer
    let n_dp = v + (1 - ext);
    if n_dp >= 4 {
        out.push((
            DiagramLabel::new('D', n_dp as usize, 1),
            bd_tail_folded(n_dp as u64 - 2, extended)?,
        ));
    }
    // (D_4)'', (E_6), (E_6)', (E_7), (E_8) at their fixed sizes
    if v == 2 + ext {
        out.push((DiagramLabel::new('D', 4, 2), bd2_fully_folded(extended)?));
    }
    if v == 6 + ext {
        out.push((DiagramLabel::new('E', 6, 0), bt_split(extended)?));
    }
    if v == 4 + ext {
        out.push((DiagramLabel::new('E', 6, 1), bt_folded(extended)?));
    }
    if v == 7 + ext {
        let t = crate::groups::character_table(crate::groups::GroupId::BinaryOctahedral)?;
        out.push((DiagramLabel::new('E', 7, 0), build_graph(&t, None, extended)?));
    }
    if v == 8 + ext {
        let t = crate::groups::character_table(crate::groups::GroupId::BinaryIcosahedral)?;
        out.push((DiagramLabel::new('E', 8, 0), build_graph(&t, None, extended)?));
    }
    Ok(out)
}

/// Match a built graph against the regenerated catalog. Unrecognized
/// graphs are reported with their invariants, never silently labeled.
pub fn classify(g: &McKayGraph) -> Result<DiagramLabel> {
    for (label, candidate) in catalog_candidates(g)? {
        if graphs_isomorphic(g, &candidate) {
            return Ok(label);
        }
    }
    let mut sigs: Vec<_> = (0..g.num_vertices()).map(|v| g.signature(v)).collect();
    sigs.sort();
    Err(Error::UnrecognizedGraph(format!(
        "extended = {}, {} vertices, signatures {:?}",
        g.extended,
        g.num_vertices(),
        sigs
    )))
}

// ---------------------------------------------------------------------
// emission
// ---------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitFormat {
    Dot,
    Json,
}

pub fn emit(g: &McKayGraph, format: EmitFormat) -> String {
    match format {
        EmitFormat::Json => serde_json::to_string_pretty(g).expect("graph serializes"),
        EmitFormat::Dot => {
            let mut out = String::from("graph mckay {\n");
            if let Some(label) = &g.label {
                out.push_str(&format!("  label=\"{label}\";\n"));
            }
            for (i, v) in g.vertices.iter().enumerate() {
                out.push_str(&format!(
                    "  v{i} [label=\"{}\", multiplicity={}, degree={}, trivial={}, loops={}];\n",
                    v.label,
                    v.mult,
                    v.degree,
                    v.trivial,
                    g.loops(i)
                ));
            }
            for i in 0..g.num_vertices() {
                for j in (i + 1)..g.num_vertices() {
                    let c = g.adjacency[i][j];
                    if c > 0 {
                        out.push_str(&format!("  v{i} -- v{j} [count={c}];\n"));
                    }
                }
            }
            out.push_str("}\n");
            out
        }
    }
}

pub fn from_json(s: &str) -> Result<McKayGraph> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("graph JSON: {e}")))
}
