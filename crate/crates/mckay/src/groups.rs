//! Static exact character data for the five families of finite subgroups
//! of SL(2,C): cyclic, binary dihedral, binary tetrahedral, binary
//! octahedral and binary icosahedral groups.
//!
//! Every character value is a [`Cyclotomic`] number: omega is stored as
//! zeta_3, i as zeta_4, sqrt 2 as zeta_8 + zeta_8^-1 and sqrt 5 as
//! 2(zeta_5 + zeta_5^4) + 1, so the whole table lives in one exact value
//! type. Class labels and row labels follow the usual conventions
//! (id, -id, sigma^k, tau, tau*sigma for the binary dihedral series).

use std::fmt;

use num_integer::Integer;
use num_traits::Signed;

use crate::exact::{Cyclotomic, Rational};
use crate::report::Report;
use crate::{Error, Result};

/// One of the five families, with its parameter where applicable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupId {
    Cyclic(u64),
    BinaryDihedral(u64),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl GroupId {
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupId::Cyclic(n) if *n < 1 => Err(Error::InvalidGroup(
                "cyclic group needs parameter n >= 1".into(),
            )),
            GroupId::BinaryDihedral(n) if *n < 2 => Err(Error::InvalidGroup(
                "binary dihedral group needs parameter n >= 2".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn order(&self) -> u64 {
        match self {
            GroupId::Cyclic(n) => *n,
            GroupId::BinaryDihedral(n) => 4 * n,
            GroupId::BinaryTetrahedral => 24,
            GroupId::BinaryOctahedral => 48,
            GroupId::BinaryIcosahedral => 120,
        }
    }

    /// lcm of the element orders.
    pub fn exponent(&self) -> u64 {
        match self {
            GroupId::Cyclic(n) => *n,
            GroupId::BinaryDihedral(n) => (2 * n).lcm(&4),
            GroupId::BinaryTetrahedral => 12,
            GroupId::BinaryOctahedral => 24,
            GroupId::BinaryIcosahedral => 60,
        }
    }

    /// CLI syntax: `cyclic:n | bd:n | bt | bo | bi`.
    pub fn parse(s: &str) -> Result<GroupId> {
        let lower = s.to_ascii_lowercase();
        let g = if let Some(rest) = lower.strip_prefix("cyclic:") {
            GroupId::Cyclic(
                rest.parse()
                    .map_err(|_| Error::Parse(format!("bad cyclic parameter '{rest}'")))?,
            )
        } else if let Some(rest) = lower.strip_prefix("bd:") {
            GroupId::BinaryDihedral(
                rest.parse()
                    .map_err(|_| Error::Parse(format!("bad dihedral parameter '{rest}'")))?,
            )
        } else {
            match lower.as_str() {
                "bt" => GroupId::BinaryTetrahedral,
                "bo" => GroupId::BinaryOctahedral,
                "bi" => GroupId::BinaryIcosahedral,
                other => {
                    return Err(Error::Parse(format!(
                        "unknown group '{other}' (expected cyclic:n, bd:n, bt, bo, bi)"
                    )))
                }
            }
        };
        g.validate()?;
        Ok(g)
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupId::Cyclic(n) => write!(f, "Z/{n}Z"),
            GroupId::BinaryDihedral(n) => write!(f, "BD_{n}"),
            GroupId::BinaryTetrahedral => write!(f, "BT"),
            GroupId::BinaryOctahedral => write!(f, "BO"),
            GroupId::BinaryIcosahedral => write!(f, "BI"),
        }
    }
}

/// Which row(s) carry the defining 2-dimensional representation. For the
/// cyclic group it is the sum of two 1-dimensional rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NaturalRep {
    Single(usize),
    Pair(usize, usize),
}

/// Conjugacy classes, class sizes and the full matrix of irreducible
/// character values for one group.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group: GroupId,
    pub class_labels: Vec<String>,
    pub class_sizes: Vec<u64>,
    pub row_labels: Vec<String>,
    pub rows: Vec<Vec<Cyclotomic>>,
    pub trivial_index: usize,
    pub natural: NaturalRep,
}

/// A class function given by its values on the classes of a table.
pub type Character = Vec<Cyclotomic>;

fn int(n: i64) -> Cyclotomic {
    Cyclotomic::from_int(n)
}

fn omega() -> Cyclotomic {
    Cyclotomic::zeta(3)
}

fn i_unit() -> Cyclotomic {
    Cyclotomic::zeta(4)
}

fn sqrt2() -> Cyclotomic {
    &Cyclotomic::zeta(8) + &Cyclotomic::zeta_pow(8, -1)
}

fn sqrt5() -> Cyclotomic {
    (&Cyclotomic::zeta(5) + &Cyclotomic::zeta_pow(5, 4)).scale(&Rational::from_integer(2.into()))
        + Cyclotomic::one()
}

/// (1 + sqrt 5)/2
pub fn mu_plus() -> Cyclotomic {
    (&sqrt5() + &Cyclotomic::one()).scale(&Rational::new(1.into(), 2.into()))
}

/// (1 - sqrt 5)/2
pub fn mu_minus() -> Cyclotomic {
    (&Cyclotomic::one() - &sqrt5()).scale(&Rational::new(1.into(), 2.into()))
}

fn cyclic_table(n: u64) -> CharacterTable {
    let class_labels: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "id".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    let rows: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| Cyclotomic::zeta_pow(n, (j * i) as i64))
                .collect()
        })
        .collect();
    CharacterTable {
        group: GroupId::Cyclic(n),
        class_labels,
        class_sizes: vec![1; n as usize],
        row_labels: (0..n).map(|j| format!("rho_{j}")).collect(),
        rows,
        trivial_index: 0,
        natural: NaturalRep::Pair((1 % n) as usize, ((n - 1) % n) as usize),
    }
}

fn bd_table(n: u64) -> CharacterTable {
    let two_n = 2 * n;
    let xi = |e: i64| Cyclotomic::zeta_pow(two_n, e);
    let mut class_labels = vec!["id".to_string(), "-id".to_string()];
    let mut class_sizes = vec![1, 1];
    for k in 1..n {
        class_labels.push(if k == 1 {
            "σ".to_string()
        } else {
            format!("σ^{k}")
        });
        class_sizes.push(2);
    }
    class_labels.push("τ".to_string());
    class_labels.push("τσ".to_string());
    class_sizes.push(n);
    class_sizes.push(n);

    let sign = |k: u64| if k % 2 == 0 { int(1) } else { int(-1) };
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    let mut row_labels: Vec<String> = Vec::new();

    // four 1-dimensional rows; the tau values depend on the parity of n
    let push_row = |label: &str, values: Vec<Cyclotomic>, labels: &mut Vec<String>, rows: &mut Vec<Vec<Cyclotomic>>| {
        labels.push(label.to_string());
        rows.push(values);
    };
    let ones: Vec<Cyclotomic> = vec![int(1); class_labels.len()];
    push_row("1", ones, &mut row_labels, &mut rows);

    let mut one_prime = vec![int(1), int(1)];
    one_prime.extend((1..n).map(|_| int(1)));
    one_prime.push(int(-1));
    one_prime.push(int(-1));
    push_row("1'", one_prime, &mut row_labels, &mut rows);

    if n % 2 == 1 {
        for (label, tau_val) in [("1''", i_unit()), ("1'''", -i_unit())] {
            let mut row = vec![int(1), int(-1)];
            row.extend((1..n).map(sign));
            row.push(tau_val.clone());
            row.push(-&tau_val);
            push_row(label, row, &mut row_labels, &mut rows);
        }
    } else {
        for (label, tau_val) in [("1''", int(1)), ("1'''", int(-1))] {
            let mut row = vec![int(1), int(1)];
            row.extend((1..n).map(sign));
            row.push(tau_val.clone());
            row.push(-&tau_val);
            push_row(label, row, &mut row_labels, &mut rows);
        }
    }

    for j in 1..n {
        let mut row = vec![int(2), sign(j).scale(&Rational::from_integer(2.into()))];
        for k in 1..n {
            row.push(&xi((k * j) as i64) + &xi(-((k * j) as i64)));
        }
        row.push(int(0));
        row.push(int(0));
        push_row(&format!("2^{j}"), row, &mut row_labels, &mut rows);
    }

    CharacterTable {
        group: GroupId::BinaryDihedral(n),
        class_labels,
        class_sizes,
        row_labels,
        rows,
        trivial_index: 0,
        natural: NaturalRep::Single(4),
    }
}

fn bt_table() -> CharacterTable {
    let w = omega();
    let w2 = &w * &w;
    let rows = vec![
        vec![int(1), int(1), int(1), int(1), int(1), int(1), int(1)],
        vec![int(1), int(1), w.clone(), w.clone(), w2.clone(), w2.clone(), int(1)],
        vec![int(1), int(1), w2.clone(), w2.clone(), w.clone(), w.clone(), int(1)],
        vec![int(3), int(3), int(0), int(0), int(0), int(0), int(-1)],
        vec![int(2), int(-2), int(1), int(-1), int(1), int(-1), int(0)],
        vec![int(2), int(-2), w.clone(), -&w, w2.clone(), -&w2, int(0)],
        vec![int(2), int(-2), w2.clone(), -&w2, w.clone(), -&w, int(0)],
    ];
    CharacterTable {
        group: GroupId::BinaryTetrahedral,
        class_labels: ["id", "-id", "a", "-a", "b", "-b", "ab"]
            .map(String::from)
            .to_vec(),
        class_sizes: vec![1, 1, 4, 4, 4, 4, 6],
        row_labels: ["1", "1'", "1''", "3", "2", "2'", "2''"]
            .map(String::from)
            .to_vec(),
        rows,
        trivial_index: 0,
        natural: NaturalRep::Single(4),
    }
}

fn bo_table() -> CharacterTable {
    let r2 = sqrt2();
    let rows = vec![
        vec![int(1), int(1), int(1), int(1), int(1), int(1), int(1), int(1)],
        vec![int(1), int(1), int(-1), int(1), int(1), int(-1), int(-1), int(1)],
        vec![int(2), int(2), int(0), int(-1), int(-1), int(0), int(0), int(2)],
        vec![int(3), int(3), int(1), int(0), int(0), int(-1), int(-1), int(-1)],
        vec![int(3), int(3), int(-1), int(0), int(0), int(1), int(1), int(-1)],
        vec![int(2), int(-2), int(0), int(1), int(-1), r2.clone(), -&r2, int(0)],
        vec![int(2), int(-2), int(0), int(1), int(-1), -&r2, r2.clone(), int(0)],
        vec![int(4), int(-4), int(0), int(-1), int(1), int(0), int(0), int(0)],
    ];
    CharacterTable {
        group: GroupId::BinaryOctahedral,
        class_labels: ["id", "-id", "ab", "a", "-a", "b", "-b", "b^2"]
            .map(String::from)
            .to_vec(),
        class_sizes: vec![1, 1, 12, 8, 8, 6, 6, 6],
        row_labels: ["1", "1'", "2'''", "3", "3'", "2", "2'", "4"]
            .map(String::from)
            .to_vec(),
        rows,
        trivial_index: 0,
        natural: NaturalRep::Single(5),
    }
}

fn bi_table() -> CharacterTable {
    let mp = mu_plus();
    let mm = mu_minus();
    let rows = vec![
        vec![int(1); 9],
        vec![
            int(3), int(3), int(0), int(0),
            mp.clone(), mp.clone(), mm.clone(), mm.clone(), int(-1),
        ],
        vec![
            int(3), int(3), int(0), int(0),
            mm.clone(), mm.clone(), mp.clone(), mp.clone(), int(-1),
        ],
        vec![
            int(4), int(4), int(1), int(1),
            int(-1), int(-1), int(-1), int(-1), int(0),
        ],
        // the 5 at ab is forced by orthogonality (pullback of the
        // degree-5 character of A_5, which is 1 on involutions)
        vec![
            int(5), int(5), int(-1), int(-1),
            int(0), int(0), int(0), int(0), int(1),
        ],
        vec![
            int(2), int(-2), int(1), int(-1),
            mp.clone(), -&mp, -&mm, mm.clone(), int(0),
        ],
        vec![
            int(2), int(-2), int(1), int(-1),
            mm.clone(), -&mm, -&mp, mp.clone(), int(0),
        ],
        vec![
            int(4), int(-4), int(-1), int(1),
            int(1), int(-1), int(-1), int(1), int(0),
        ],
        vec![
            int(6), int(-6), int(0), int(0),
            int(-1), int(1), int(1), int(-1), int(0),
        ],
    ];
    CharacterTable {
        group: GroupId::BinaryIcosahedral,
        class_labels: ["id", "-id", "a", "-a", "b", "-b", "b^2", "-b^2", "ab"]
            .map(String::from)
            .to_vec(),
        class_sizes: vec![1, 1, 20, 20, 12, 12, 12, 12, 30],
        row_labels: ["1", "3", "3'", "4'", "5", "2", "2'", "4", "6"]
            .map(String::from)
            .to_vec(),
        rows,
        trivial_index: 0,
        natural: NaturalRep::Single(5),
    }
}

/// The exact character table of the group.
pub fn character_table(g: GroupId) -> Result<CharacterTable> {
    g.validate()?;
    Ok(match g {
        GroupId::Cyclic(n) => cyclic_table(n),
        GroupId::BinaryDihedral(n) => bd_table(n),
        GroupId::BinaryTetrahedral => bt_table(),
        GroupId::BinaryOctahedral => bo_table(),
        GroupId::BinaryIcosahedral => bi_table(),
    })
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.class_labels.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// The trace character of the defining 2-dimensional embedding.
    pub fn natural_character(&self) -> Character {
        match self.natural {
            NaturalRep::Single(i) => self.rows[i].clone(),
            NaturalRep::Pair(i, j) => self.rows[i]
                .iter()
                .zip(&self.rows[j])
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// (1/|G|) sum_c |c| u(c) conj(v(c)); conj is the Galois map -1.
    pub fn inner_product(&self, u: &[Cyclotomic], v: &[Cyclotomic]) -> Cyclotomic {
        assert_eq!(u.len(), self.num_classes());
        assert_eq!(v.len(), self.num_classes());
        let mut acc = Cyclotomic::zero();
        for (c, size) in self.class_sizes.iter().enumerate() {
            let term = (&u[c] * &v[c].conj()).scale(&Rational::from_integer((*size).into()));
            acc = &acc + &term;
        }
        acc.scale(&Rational::new(1.into(), self.group.order().into()))
    }

    /// Pointwise product of class functions.
    pub fn pointwise(u: &[Cyclotomic], v: &[Cyclotomic]) -> Character {
        u.iter().zip(v).map(|(a, b)| a * b).collect()
    }

    /// Degrees chi(id) as plain integers.
    pub fn degrees(&self) -> Vec<i64> {
        self.rows
            .iter()
            .map(|r| {
                r[0].as_rational()
                    .and_then(|q| {
                        if q.is_integer() {
                            Some(q.to_integer())
                        } else {
                            None
                        }
                    })
                    .and_then(|b| i64::try_from(b).ok())
                    .expect("degree is a small positive integer")
            })
            .collect()
    }

    /// Classical table layout: one row per character, class sizes at the
    /// bottom.
    pub fn layout(&self) -> String {
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend(self.class_labels.iter().cloned());
        cells.push(header);
        for (label, row) in self.row_labels.iter().zip(&self.rows) {
            let mut line = vec![label.clone()];
            line.extend(row.iter().map(|v| v.to_string()));
            cells.push(line);
        }
        let mut sizes = vec!["#".to_string()];
        sizes.extend(self.class_sizes.iter().map(|s| s.to_string()));
        cells.push(sizes);

        let cols = cells[0].len();
        let widths: Vec<usize> = (0..cols)
            .map(|c| {
                cells
                    .iter()
                    .map(|row| row[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for (r, row) in cells.iter().enumerate() {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(c, cell)| {
                    let pad = widths[c] - cell.chars().count();
                    format!("{}{}", cell, " ".repeat(pad))
                })
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
            if r == 0 || r == cells.len() - 2 {
                let total: usize = widths.iter().sum::<usize>() + 2 * (cols - 1);
                out.push_str(&"-".repeat(total));
                out.push('\n');
            }
        }
        out
    }
}

/// Check every structural invariant of a character table: class sizes,
/// integral degrees, sum of squared degrees, exact row and column
/// orthogonality, and self-duality of the natural character.
pub fn verify_table(t: &CharacterTable) -> Report {
    let mut report = Report::new(format!("character table {}", t.group));
    let order = t.group.order();

    let size_sum: u64 = t.class_sizes.iter().sum();
    report.check(
        "class sizes sum to |G|",
        size_sum == order,
        format!("{size_sum} vs {order}"),
    );

    let shape_ok = t.rows.iter().all(|r| r.len() == t.num_classes())
        && t.row_labels.len() == t.num_rows();
    report.check("matrix shape", shape_ok, "");

    let mut degrees_ok = true;
    let mut sum_sq: i64 = 0;
    for row in &t.rows {
        match row[0].as_rational() {
            Some(q) if q.is_integer() && q.is_positive() => {
                let d: i64 = i64::try_from(q.to_integer()).unwrap_or(0);
                sum_sq += d * d;
            }
            _ => degrees_ok = false,
        }
    }
    report.check("degrees are positive integers", degrees_ok, "");
    report.check(
        "sum of squared degrees equals |G|",
        sum_sq == order as i64,
        format!("{sum_sq} vs {order}"),
    );

    let trivial_ok = t.rows[t.trivial_index].iter().all(|v| v.is_one());
    report.check("trivial row is constant 1", trivial_ok, "");

    let mut rows_ok = true;
    let mut detail = String::new();
    for i in 0..t.num_rows() {
        for j in 0..t.num_rows() {
            let ip = t.inner_product(&t.rows[i], &t.rows[j]);
            let expected = if i == j {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            };
            if ip != expected {
                rows_ok = false;
                if detail.is_empty() {
                    detail = format!("<{},{}> = {}", t.row_labels[i], t.row_labels[j], ip);
                }
            }
        }
    }
    report.check("row orthogonality", rows_ok, detail);

    let mut cols_ok = true;
    let mut detail = String::new();
    for c in 0..t.num_classes() {
        for d in 0..t.num_classes() {
            let mut acc = Cyclotomic::zero();
            for row in &t.rows {
                acc = &acc + &(&row[c] * &row[d].conj());
            }
            let expected = if c == d {
                Cyclotomic::from_rational(Rational::new(
                    order.into(),
                    t.class_sizes[c].into(),
                ))
            } else {
                Cyclotomic::zero()
            };
            if acc != expected {
                cols_ok = false;
                if detail.is_empty() {
                    detail = format!(
                        "columns {} and {} give {}",
                        t.class_labels[c], t.class_labels[d], acc
                    );
                }
            }
        }
    }
    report.check("column orthogonality", cols_ok, detail);

    let natural = t.natural_character();
    report.check(
        "natural character has degree 2",
        natural[0] == Cyclotomic::from_int(2),
        "",
    );
    let self_dual = natural.iter().all(|v| v.conj() == *v);
    report.check("natural character is self-dual", self_dual, "");

    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_exponents() {
        assert_eq!(GroupId::Cyclic(7).order(), 7);
        assert_eq!(GroupId::BinaryDihedral(3).order(), 12);
        assert_eq!(GroupId::BinaryDihedral(3).exponent(), 12);
        assert_eq!(GroupId::BinaryDihedral(4).exponent(), 8);
        assert_eq!(GroupId::BinaryIcosahedral.exponent(), 60);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(character_table(GroupId::Cyclic(0)).is_err());
        assert!(character_table(GroupId::BinaryDihedral(1)).is_err());
        assert!(GroupId::parse("bd:1").is_err());
        assert!(GroupId::parse("nope").is_err());
        assert_eq!(GroupId::parse("cyclic:5").unwrap(), GroupId::Cyclic(5));
    }

    #[test]
    fn all_shipped_tables_verify() {
        let mut ids = vec![
            GroupId::BinaryTetrahedral,
            GroupId::BinaryOctahedral,
            GroupId::BinaryIcosahedral,
        ];
        for n in 1..=8 {
            ids.push(GroupId::Cyclic(n));
        }
        for n in 2..=6 {
            ids.push(GroupId::BinaryDihedral(n));
        }
        for id in ids {
            let t = character_table(id).unwrap();
            let r = verify_table(&t);
            assert!(r.pass(), "{id}:\n{r}");
        }
    }

    #[test]
    fn bo_two_at_b_is_sqrt2() {
        let t = character_table(GroupId::BinaryOctahedral).unwrap();
        let row = t.row_labels.iter().position(|l| l == "2").unwrap();
        let col = t.class_labels.iter().position(|l| l == "b").unwrap();
        assert_eq!(t.rows[row][col], sqrt2());
    }

    #[test]
    fn bi_class_sizes_match() {
        let t = character_table(GroupId::BinaryIcosahedral).unwrap();
        assert_eq!(t.class_sizes, vec![1, 1, 20, 20, 12, 12, 12, 12, 30]);
    }

    #[test]
    fn bt_one_prime_at_a_is_omega() {
        let t = character_table(GroupId::BinaryTetrahedral).unwrap();
        let row = t.row_labels.iter().position(|l| l == "1'").unwrap();
        let col = t.class_labels.iter().position(|l| l == "a").unwrap();
        assert_eq!(t.rows[row][col], omega());
    }

    #[test]
    fn bt_natural_at_minus_id_is_minus_two() {
        let t = character_table(GroupId::BinaryTetrahedral).unwrap();
        let natural = t.natural_character();
        assert_eq!(natural[1], Cyclotomic::from_int(-2));
    }

    #[test]
    fn bd3_natural_at_sigma() {
        let t = character_table(GroupId::BinaryDihedral(3)).unwrap();
        let natural = t.natural_character();
        let col = t.class_labels.iter().position(|l| l == "σ").unwrap();
        let expected = &Cyclotomic::zeta(6) + &Cyclotomic::zeta_pow(6, -1);
        assert_eq!(natural[col], expected);
    }

    #[test]
    fn cyclic_natural_is_sum_of_two_rows() {
        let t = character_table(GroupId::Cyclic(4)).unwrap();
        let natural = t.natural_character();
        let expected: Vec<Cyclotomic> = (0..4)
            .map(|i| &Cyclotomic::zeta_pow(4, i) + &Cyclotomic::zeta_pow(4, -i))
            .collect();
        assert_eq!(natural, expected);
        assert_eq!(natural[0], Cyclotomic::from_int(2));
        assert_eq!(natural[2], Cyclotomic::from_int(-2));
    }

    #[test]
    fn cyclic_n1_is_trivial() {
        let t = character_table(GroupId::Cyclic(1)).unwrap();
        assert_eq!(t.num_classes(), 1);
        assert_eq!(t.num_rows(), 1);
        assert!(verify_table(&t).pass());
        assert_eq!(t.natural_character()[0], Cyclotomic::from_int(2));
    }

    #[test]
    fn perturbed_table_fails_orthogonality() {
        let mut t = character_table(GroupId::BinaryTetrahedral).unwrap();
        t.rows[3][2] = Cyclotomic::from_int(1); // genuine value is 0
        let r = verify_table(&t);
        assert!(!r.pass());
        assert!(r
            .items
            .iter()
            .any(|i| i.name.contains("orthogonality") && !i.pass));
    }

    #[test]
    fn bt_sum_of_squares_is_24() {
        let t = character_table(GroupId::BinaryTetrahedral).unwrap();
        let sum: i64 = t.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sum, 24);
    }

    #[test]
    fn values_lie_in_exponent_cyclotomic_field() {
        for id in [
            GroupId::Cyclic(6),
            GroupId::BinaryDihedral(3),
            GroupId::BinaryDihedral(4),
            GroupId::BinaryTetrahedral,
            GroupId::BinaryOctahedral,
            GroupId::BinaryIcosahedral,
        ] {
            let t = character_table(id).unwrap();
            let e = id.exponent();
            for row in &t.rows {
                for v in row {
                    assert!(
                        v.try_conductor(e).is_some(),
                        "{id}: value {v} outside Q(zeta_{e})"
                    );
                }
            }
        }
    }

    #[test]
    fn class_counts_match_family() {
        assert_eq!(character_table(GroupId::Cyclic(9)).unwrap().num_classes(), 9);
        for n in 2..=6 {
            assert_eq!(
                character_table(GroupId::BinaryDihedral(n)).unwrap().num_classes(),
                n as usize + 3
            );
        }
        assert_eq!(character_table(GroupId::BinaryTetrahedral).unwrap().num_classes(), 7);
        assert_eq!(character_table(GroupId::BinaryOctahedral).unwrap().num_classes(), 8);
        assert_eq!(character_table(GroupId::BinaryIcosahedral).unwrap().num_classes(), 9);
    }
}
