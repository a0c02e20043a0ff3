//! The acceptance suite: each criterion is a function returning a
//! [`Report`] with one item per check, runnable from the CLI (`selftest`)
//! and from the integration tests.

use num_bigint::BigInt;

use crate::exact::Rational;
use crate::galois::{character_action, orbits, FieldSpec, FoldContext, FormKind, GaloisForm};
use crate::graphs::{
    affine_kernel_check, build_from_context, build_graph, classify, fold_by_partition,
    fold_edges_by_characters,
};
use crate::groups::{character_table, verify_table, GroupId};
use crate::realize::{
    closure_order, hilbert_symbol_local, hilbert_symbol_q, realizable, relevant_places, Mat2,
    Obstruction, Verdict, WitnessMatrices,
};
use crate::report::Report;
use crate::toric::verify_mckay_cyclic;
use crate::Result;

fn shipped_groups() -> Vec<GroupId> {
    let mut ids: Vec<GroupId> = (1..=12).map(GroupId::Cyclic).collect();
    ids.extend((2..=8).map(GroupId::BinaryDihedral));
    ids.extend([
        GroupId::BinaryTetrahedral,
        GroupId::BinaryOctahedral,
        GroupId::BinaryIcosahedral,
    ]);
    ids
}

/// Criterion 1: exact orthogonality and degree identities for every
/// shipped character table.
pub fn criterion_1() -> Result<Report> {
    let mut report = Report::new("criterion 1: character table fidelity");
    for id in shipped_groups() {
        let table = character_table(id)?;
        let r = verify_table(&table);
        report.check(
            format!("{id}"),
            r.pass(),
            if r.pass() {
                String::new()
            } else {
                r.items
                    .iter()
                    .filter(|i| !i.pass)
                    .map(|i| i.name.clone())
                    .collect::<Vec<_>>()
                    .join(", ")
            },
        );
    }
    Ok(report)
}

/// Criterion 2: the split extended graphs classify to the expected
/// diagrams and satisfy (2 Id - A) d = 0.
pub fn criterion_2() -> Result<Report> {
    let mut report = Report::new("criterion 2: split graph catalog");
    for id in shipped_groups() {
        let table = character_table(id)?;
        let graph = build_graph(&table, None, true)?;
        let label = classify(&graph)?;
        let expected = match id {
            GroupId::Cyclic(n) => format!("(A_{})", n - 1),
            GroupId::BinaryDihedral(n) => format!("(D_{})", n + 2),
            GroupId::BinaryTetrahedral => "(E_6)".to_string(),
            GroupId::BinaryOctahedral => "(E_7)".to_string(),
            GroupId::BinaryIcosahedral => "(E_8)".to_string(),
        };
        let kernel = affine_kernel_check(&graph);
        report.check(
            format!("{id} split graph"),
            label.name() == expected && kernel,
            format!(
                "classified {} (expected {expected}), affine kernel {}",
                label.name(),
                if kernel { "ok" } else { "violated" }
            ),
        );
    }
    Ok(report)
}

struct FoldScenario {
    name: String,
    form: GaloisForm,
    expected_label: String,
    expected_dynkin: String,
}

fn fold_scenarios() -> Result<Vec<FoldScenario>> {
    let mut out = Vec::new();
    for n in 3..=8u64 {
        out.push(FoldScenario {
            name: format!("mu-cyclic n={n}"),
            form: GaloisForm::new(
                GroupId::Cyclic(n),
                FieldSpec::real_subfield(n),
                FormKind::MuCyclic,
            )?,
            expected_label: format!("(A_{})", n - 1),
            expected_dynkin: format!("A_{}", n - 1),
        });
        out.push(FoldScenario {
            name: format!("constant cyclic n={n}"),
            form: GaloisForm::new(
                GroupId::Cyclic(n),
                FieldSpec::real_subfield(n),
                FormKind::Constant,
            )?,
            expected_label: format!("(A_{})'", n - 1),
            expected_dynkin: format!("C_{}", (n - 1).div_ceil(2)),
        });
    }
    for n in 2..=8u64 {
        let (label, dynkin) = if n % 2 == 0 {
            (format!("(D_{})'", n + 2), format!("B_{}", n + 1))
        } else {
            (format!("(D_{})", n + 2), format!("D_{}", n + 2))
        };
        out.push(FoldScenario {
            name: format!("twisted BD_{n}"),
            form: GaloisForm::new(
                GroupId::BinaryDihedral(n),
                FieldSpec::real_subfield(4 * n),
                FormKind::TwistedBD,
            )?,
            expected_label: label,
            expected_dynkin: dynkin,
        });
    }
    out.push(FoldScenario {
        name: "BT over Q".to_string(),
        form: GaloisForm::new(
            GroupId::BinaryTetrahedral,
            FieldSpec::rationals(),
            FormKind::Constant,
        )?,
        expected_label: "(E_6)'".to_string(),
        expected_dynkin: "F_4".to_string(),
    });
    out.push(FoldScenario {
        name: "BT over Q(zeta_3)".to_string(),
        form: GaloisForm::new(
            GroupId::BinaryTetrahedral,
            FieldSpec::cyclotomic(3),
            FormKind::Constant,
        )?,
        expected_label: "(E_6)".to_string(),
        expected_dynkin: "E_6".to_string(),
    });
    Ok(out)
}

/// Criterion 3: the folding catalog with its Dynkin relabeling.
pub fn criterion_3() -> Result<Report> {
    let mut report = Report::new("criterion 3: folding catalog");
    for scenario in fold_scenarios()? {
        let ctx = FoldContext::new(scenario.form.clone())?;
        let graph = build_from_context(&ctx, true)?;
        let label = classify(&graph)?;
        let ok = label.name() == scenario.expected_label
            && label.dynkin() == scenario.expected_dynkin;
        report.check(
            scenario.name.clone(),
            ok,
            format!(
                "got {} -> {}, expected {} -> {}",
                label.name(),
                label.dynkin(),
                scenario.expected_label,
                scenario.expected_dynkin
            ),
        );
        // the BT/Q fold must merge exactly {1',1''} and {2',2''}
        if scenario.name == "BT over Q" {
            report.check(
                "BT over Q orbit structure",
                ctx.orbits.orbits == vec![vec![0], vec![1, 2], vec![3], vec![4], vec![5, 6]],
                format!("{:?}", ctx.orbits.orbits),
            );
        }
    }
    Ok(report)
}

/// Criterion 4: folded edge counts by orbit summation equal the direct
/// Hom-dimension computation on orbit sums, for every folding scenario.
pub fn criterion_4() -> Result<Report> {
    let mut report = Report::new("criterion 4: fold consistency");
    for scenario in fold_scenarios()? {
        let table = scenario.form.table()?;
        let action = character_action(&scenario.form)?;
        let partition = orbits(&action, &table)?;
        let graph = fold_by_partition(&table, &partition, true)?;
        let direct = fold_edges_by_characters(&table, &partition)?;
        let mut ok = true;
        for a in 0..graph.num_vertices() {
            for b in 0..graph.num_vertices() {
                if a != b && graph.adjacency[a][b] != direct[a][b] {
                    ok = false;
                }
            }
        }
        report.check(scenario.name, ok, "");
    }
    Ok(report)
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn witness_pair(v: &Verdict) -> Option<(Mat2, Mat2)> {
    match v {
        Verdict::Realizable {
            witness: Some(WitnessMatrices::Pair(a, b)),
        } => Some((a.clone(), b.clone())),
        _ => None,
    }
}

/// Criterion 5: Hilbert symbols and realizability scenarios.
pub fn criterion_5() -> Result<Report> {
    let mut report = Report::new("criterion 5: Hilbert symbols and realizability");

    // product formula on 100 seeded random pairs
    {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x4d634b6179);
        let mut ok = true;
        let mut checked = 0;
        while checked < 100 {
            let n1: i64 = rng.gen_range(-50..=50);
            let d1: i64 = rng.gen_range(1..=50);
            let n2: i64 = rng.gen_range(-50..=50);
            let d2: i64 = rng.gen_range(1..=50);
            if n1 == 0 || n2 == 0 {
                continue;
            }
            let a = rat(n1, d1);
            let b = rat(n2, d2);
            let product: i32 = relevant_places(&a, &b)
                .into_iter()
                .map(|p| hilbert_symbol_local(&a, &b, p).unwrap())
                .product();
            if product != 1 {
                ok = false;
            }
            checked += 1;
        }
        report.check("product formula on 100 random pairs", ok, "");
    }

    report.check(
        "(-1,-1)_Q = -1",
        hilbert_symbol_q(&rat(-1, 1), &rat(-1, 1))?.value == -1,
        "",
    );

    // BD_2 over Q and over Q(i)
    let v = realizable(GroupId::BinaryDihedral(2), &FieldSpec::rationals(), 50)?;
    report.check(
        "BD_2 not realizable over Q",
        matches!(
            v,
            Verdict::NotRealizable {
                obstruction: Obstruction::HilbertQ { .. }
            }
        ),
        "",
    );
    let v = realizable(GroupId::BinaryDihedral(2), &FieldSpec::cyclotomic(4), 50)?;
    let ok = witness_pair(&v).is_some_and(|(s, t)| {
        let minus = Mat2::identity().neg();
        t.mul(&t) == minus && s.mul(&s) == minus && t.mul(&s).pow(2) == minus
    });
    report.check("BD_2 realizable over Q(i) with exact relations", ok, "");

    // cyclic over fields containing the trace
    {
        let mut ok = true;
        for n in 1..=12u64 {
            let field = FieldSpec::real_subfield(n);
            match realizable(GroupId::Cyclic(n), &field, 50)? {
                Verdict::Realizable {
                    witness: Some(WitnessMatrices::Single(m)),
                } => {
                    if !m.pow(n).is_identity() || !m.det().is_one() {
                        ok = false;
                    }
                }
                _ => ok = false,
            }
        }
        report.check("cyclic companion witnesses verified, n <= 12", ok, "");
    }

    // real-embedding obstructions
    let v = realizable(GroupId::BinaryOctahedral, &FieldSpec::real_subfield(8), 50)?;
    report.check(
        "BO blocked over Q(sqrt 2)",
        matches!(
            v,
            Verdict::NotRealizable {
                obstruction: Obstruction::RealEmbedding { .. }
            }
        ),
        "",
    );
    let v = realizable(GroupId::BinaryIcosahedral, &FieldSpec::real_subfield(5), 50)?;
    report.check(
        "BI blocked over Q(sqrt 5)",
        matches!(
            v,
            Verdict::NotRealizable {
                obstruction: Obstruction::RealEmbedding { .. }
            }
        ),
        "",
    );

    // the binary polyhedral groups over Q(i) adjoined to the trace field
    for (name, group, field, order) in [
        (
            "BT over Q(i)",
            GroupId::BinaryTetrahedral,
            FieldSpec::cyclotomic(4),
            24usize,
        ),
        (
            "BO over Q(zeta_8)",
            GroupId::BinaryOctahedral,
            FieldSpec::cyclotomic(8),
            48,
        ),
        (
            "BI over Q(i, sqrt 5)",
            GroupId::BinaryIcosahedral,
            FieldSpec::new(20, vec![9])?,
            120,
        ),
    ] {
        let v = realizable(group, &field, 50)?;
        let ok = witness_pair(&v).is_some_and(|(a, b)| {
            let minus = Mat2::identity().neg();
            let k = match group {
                GroupId::BinaryTetrahedral => 3,
                GroupId::BinaryOctahedral => 4,
                _ => 5,
            };
            a.pow(3) == minus
                && b.pow(k) == minus
                && a.mul(&b).pow(2) == minus
                && closure_order(&[a, b], order + 8) == Some(order)
        });
        report.check(name, ok, "");
    }

    Ok(report)
}

/// Criterion 6: the toric cross-check for n = 2..12 and both cyclic
/// forms.
pub fn criterion_6() -> Result<Report> {
    let mut report = Report::new("criterion 6: toric end-to-end");
    for n in 2..=12u64 {
        for kind in [FormKind::MuCyclic, FormKind::Constant] {
            let form = GaloisForm::new(GroupId::Cyclic(n), FieldSpec::real_subfield(n), kind)?;
            let r = verify_mckay_cyclic(n, &form)?;
            report.check(
                format!("n = {n}, {kind:?}"),
                r.pass(),
                if r.pass() {
                    String::new()
                } else {
                    r.items
                        .iter()
                        .filter(|i| !i.pass)
                        .map(|i| format!("{}: {}", i.name, i.detail))
                        .collect::<Vec<_>>()
                        .join("; ")
                },
            );
        }
    }
    Ok(report)
}

/// All criteria in order, with their reports.
pub fn run_all() -> Result<Vec<Report>> {
    Ok(vec![
        criterion_1()?,
        criterion_2()?,
        criterion_3()?,
        criterion_4()?,
        criterion_5()?,
        criterion_6()?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_criteria_pass() {
        for report in run_all().unwrap() {
            assert!(report.pass(), "{report}");
        }
    }
}
