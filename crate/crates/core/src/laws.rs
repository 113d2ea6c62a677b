//! Executable checks of the algebraic behaviour of the junctional sums:
//! consistency with Dempster's rule after projection, first/last-operand
//! dominance in chains, and (non-)associativity.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::fusion::{chain, combine, dempster_combine, Rule};
use crate::mass::{MassFunction, SetMassFunction};

/// Default per-mass tolerance for equality in property checks.
pub const DEFAULT_CHECK_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    Events(MassFunction),
    Sets(SetMassFunction),
}

/// What a failed check observed.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub note: String,
    pub values: Vec<(String, Evidence)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyReport {
    pub name: String,
    pub passed: bool,
    /// Largest per-element mass difference observed; zero when vacuous.
    pub max_deviation: f64,
    pub summary: String,
    /// Present whenever `passed` is false.
    pub witness: Option<Witness>,
}

impl PropertyReport {
    fn pass(name: impl Into<String>, max_deviation: f64, summary: impl Into<String>) -> Self {
        PropertyReport {
            name: name.into(),
            passed: true,
            max_deviation,
            summary: summary.into(),
            witness: None,
        }
    }

    fn fail(
        name: impl Into<String>,
        max_deviation: f64,
        summary: impl Into<String>,
        witness: Witness,
    ) -> Self {
        PropertyReport {
            name: name.into(),
            passed: false,
            max_deviation,
            summary: summary.into(),
            witness: Some(witness),
        }
    }
}

/// Project the left sum, the right sum, and compare both with Dempster's rule
/// on the projected operands.
pub fn check_consistency(first: &MassFunction, second: &MassFunction, tol: f64) -> PropertyReport {
    const NAME: &str = "consistency";
    let left = combine(Rule::Left, first, second).map(|o| o.result.project());
    let right = combine(Rule::Right, first, second).map(|o| o.result.project());
    let classical = dempster_combine(&first.project(), &second.project());

    match (left, right, classical) {
        (Ok(l), Ok(r), Ok(d)) => {
            let deviation = l
                .max_deviation(&r)
                .max(l.max_deviation(&d))
                .max(r.max_deviation(&d));
            let agree = l.approx_eq(&r, tol) && l.approx_eq(&d, tol) && r.approx_eq(&d, tol);
            let summary =
                format!("projected left, projected right and Dempster agree within {tol:e}");
            if agree {
                PropertyReport::pass(NAME, deviation, summary)
            } else {
                let witness = Witness {
                    note: "projections disagree".into(),
                    values: vec![
                        ("projected left sum".into(), Evidence::Sets(l)),
                        ("projected right sum".into(), Evidence::Sets(r)),
                        ("dempster".into(), Evidence::Sets(d)),
                    ],
                };
                PropertyReport::fail(NAME, deviation, "projections disagree", witness)
            }
        }
        (
            Err(Error::TotalConflict { .. }),
            Err(Error::TotalConflict { .. }),
            Err(Error::TotalConflict { .. }),
        ) => PropertyReport::pass(NAME, 0.0, "all three rules report total conflict"),
        (l, r, d) => {
            let describe =
                |name: &str, ok: bool| format!("{name}: {}", if ok { "defined" } else { "error" });
            let note = [
                describe("left", l.is_ok()),
                describe("right", r.is_ok()),
                describe("dempster", d.is_ok()),
            ]
            .join(", ");
            let witness = Witness {
                note: note.clone(),
                values: Vec::new(),
            };
            PropertyReport::fail(NAME, f64::INFINITY, note, witness)
        }
    }
}

/// Distinct chain results over every ordering of `sources`, clustered by
/// [`MassFunction::approx_eq`]. Runs `n!` chains.
pub fn distinct_chain_results(
    rule: Rule,
    sources: &[&MassFunction],
    tol: f64,
) -> Result<Vec<MassFunction>> {
    let mut distinct: Vec<MassFunction> = Vec::new();
    for order in (0..sources.len()).permutations(sources.len()) {
        let ordered: Vec<&MassFunction> = order.iter().map(|&i| sources[i]).collect();
        let result = chain(rule, &ordered)?.result;
        if !distinct.iter().any(|d| d.approx_eq(&result, tol)) {
            distinct.push(result);
        }
    }
    Ok(distinct)
}

/// A left chain depends on the order of everything after the first source
/// only through the projection, so permuting that tail changes nothing; a
/// right chain likewise for everything before the last source. Also checks
/// that all `n!` orderings yield at most `n` distinct results.
pub fn check_pseudo_matthew(rule: Rule, sources: &[&MassFunction], tol: f64) -> PropertyReport {
    let name = format!("pseudo-matthew({rule})");
    let n = sources.len();
    if n < 3 {
        return PropertyReport::pass(name, 0.0, format!("vacuous with {n} sources"));
    }

    let (fixed, free): (usize, Vec<usize>) = match rule {
        Rule::Left => (0, (1..n).collect()),
        Rule::Right => (n - 1, (0..n - 1).collect()),
    };
    let mut reference: Option<MassFunction> = None;
    let mut conflicts = 0usize;
    let mut runs = 0usize;
    let mut deviation: f64 = 0.0;
    for perm in free.iter().copied().permutations(free.len()) {
        let order: Vec<usize> = match rule {
            Rule::Left => std::iter::once(fixed).chain(perm).collect(),
            Rule::Right => perm.into_iter().chain(std::iter::once(fixed)).collect(),
        };
        let ordered: Vec<&MassFunction> = order.iter().map(|&i| sources[i]).collect();
        runs += 1;
        match chain(rule, &ordered) {
            Ok(out) => match &reference {
                None => reference = Some(out.result),
                Some(r) => {
                    deviation = deviation.max(r.max_deviation(&out.result));
                    if !r.approx_eq(&out.result, tol) {
                        let witness = Witness {
                            note: format!("ordering {order:?} differs from the reference ordering"),
                            values: vec![
                                ("reference".into(), Evidence::Events(r.clone())),
                                (format!("ordering {order:?}"), Evidence::Events(out.result)),
                            ],
                        };
                        return PropertyReport::fail(
                            name,
                            deviation,
                            "tail permutation changed the result",
                            witness,
                        );
                    }
                }
            },
            Err(Error::TotalConflict { .. }) => conflicts += 1,
            Err(e) => {
                let witness = Witness {
                    note: e.to_string(),
                    values: Vec::new(),
                };
                return PropertyReport::fail(name, f64::INFINITY, "chain failed", witness);
            }
        }
    }
    if conflicts == runs {
        return PropertyReport::pass(name, 0.0, "every ordering reports total conflict");
    }
    if conflicts > 0 {
        let witness = Witness {
            note: format!("{conflicts} of {runs} orderings hit total conflict"),
            values: Vec::new(),
        };
        return PropertyReport::fail(
            name,
            f64::INFINITY,
            "total conflict depends on ordering",
            witness,
        );
    }

    match distinct_chain_results(rule, sources, tol) {
        Ok(distinct) if distinct.len() <= n => PropertyReport::pass(
            name,
            deviation,
            format!(
                "{runs} tail orderings agree; {} distinct results over all orderings (bound {n})",
                distinct.len()
            ),
        ),
        Ok(distinct) => {
            let count = distinct.len();
            let witness = Witness {
                note: format!("{count} distinct results exceed the bound of {n}"),
                values: distinct
                    .into_iter()
                    .enumerate()
                    .map(|(i, d)| (format!("result {i}"), Evidence::Events(d)))
                    .collect(),
            };
            PropertyReport::fail(
                name,
                deviation,
                format!("{count} distinct results > {n}"),
                witness,
            )
        }
        Err(e) => {
            let witness = Witness {
                note: e.to_string(),
                values: Vec::new(),
            };
            PropertyReport::fail(
                name,
                f64::INFINITY,
                "chain over a full ordering failed",
                witness,
            )
        }
    }
}

/// Compare `(m1 ⊕first m2) ⊕second m3` with `m1 ⊕first (m2 ⊕second m3)`.
///
/// Same-direction rules are expected to pass; mixed directions generally do
/// not, and the witness then carries both groupings.
pub fn check_associativity(
    first_rule: Rule,
    second_rule: Rule,
    m1: &MassFunction,
    m2: &MassFunction,
    m3: &MassFunction,
    tol: f64,
) -> Result<PropertyReport> {
    let name = format!("associativity({first_rule},{second_rule})");
    let (lhs, rhs) = groupings(first_rule, second_rule, m1, m2, m3)?;
    let deviation = lhs.max_deviation(&rhs);
    if lhs.approx_eq(&rhs, tol) {
        return Ok(PropertyReport::pass(
            name,
            deviation,
            format!("both groupings agree within {tol:e}"),
        ));
    }
    let witness = Witness {
        note: "groupings differ".into(),
        values: vec![
            (
                format!("(m1 {first_rule} m2) {second_rule} m3"),
                Evidence::Events(lhs),
            ),
            (
                format!("m1 {first_rule} (m2 {second_rule} m3)"),
                Evidence::Events(rhs),
            ),
        ],
    };
    Ok(PropertyReport::fail(
        name,
        deviation,
        "groupings differ",
        witness,
    ))
}

/// Both bracketings of a three-operand combination, left grouping first.
pub fn groupings(
    first_rule: Rule,
    second_rule: Rule,
    m1: &MassFunction,
    m2: &MassFunction,
    m3: &MassFunction,
) -> Result<(MassFunction, MassFunction)> {
    let inner_left = combine(first_rule, m1, m2)?.result;
    let lhs = combine(second_rule, &inner_left, m3)
        .map_err(|e| restep(e, 2))?
        .result;
    let inner_right = combine(second_rule, m2, m3)?.result;
    let rhs = combine(first_rule, m1, &inner_right)
        .map_err(|e| restep(e, 2))?
        .result;
    Ok((lhs, rhs))
}

fn restep(e: Error, step: usize) -> Error {
    match e {
        Error::TotalConflict { .. } => Error::TotalConflict { step },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{abc, mass};

    fn three_sources() -> [MassFunction; 3] {
        let f = abc();
        [
            mass(&f, &[("ab", 0.4), ("b", 0.3), ("aac", 0.3)]),
            mass(&f, &[("ba", 0.2), ("bb", 0.3), ("ca", 0.3), ("acc", 0.2)]),
            mass(&f, &[("a", 0.2), ("acc", 0.3), ("ba", 0.5)]),
        ]
    }

    #[test]
    fn consistency_on_worked_pair() {
        let [m1, m2, _] = three_sources();
        let report = check_consistency(&m1, &m2, 1e-9);
        assert!(report.passed, "{report:?}");
        assert!(report.max_deviation < 1e-12);
        assert!(check_consistency(&m1, &m1, 1e-9).passed);
    }

    #[test]
    fn consistency_under_total_conflict() {
        let f = abc();
        let a = mass(&f, &[("a", 1.0)]);
        let b = mass(&f, &[("bb", 1.0)]);
        let report = check_consistency(&a, &b, 1e-9);
        assert!(report.passed);
        assert_eq!(report.max_deviation, 0.0);
    }

    #[test]
    fn matthew_on_three_sources() {
        let [m1, m2, m3] = three_sources();
        for rule in Rule::ALL {
            let report = check_pseudo_matthew(rule, &[&m1, &m2, &m3], 1e-9);
            assert!(report.passed, "{report:?}");
        }
        let vacuous = check_pseudo_matthew(Rule::Left, &[&m1, &m2], 1e-9);
        assert!(vacuous.passed);
        assert_eq!(vacuous.max_deviation, 0.0);
    }

    #[test]
    fn associativity_same_and_mixed() {
        let [m1, m2, m3] = three_sources();
        for rule in Rule::ALL {
            let report = check_associativity(rule, rule, &m1, &m2, &m3, 1e-9).unwrap();
            assert!(report.passed, "{report:?}");
        }
        let mixed = check_associativity(Rule::Left, Rule::Right, &m1, &m2, &m3, 1e-9).unwrap();
        assert!(!mixed.passed);
        let witness = mixed.witness.unwrap();
        assert_eq!(witness.values.len(), 2);
        assert!(mixed.max_deviation > 0.1);
    }

    #[test]
    fn identical_certain_operands_associate() {
        let f = abc();
        let m = mass(&f, &[("ab", 1.0)]);
        for r1 in Rule::ALL {
            for r2 in Rule::ALL {
                assert!(
                    check_associativity(r1, r2, &m, &m, &m, 1e-12)
                        .unwrap()
                        .passed
                );
            }
        }
    }

    #[test]
    fn associativity_reports_total_conflict() {
        let f = abc();
        let a = mass(&f, &[("a", 1.0)]);
        let c = mass(&f, &[("c", 1.0)]);
        let err = check_associativity(Rule::Left, Rule::Left, &a, &c, &a, 1e-9).unwrap_err();
        assert!(matches!(err, Error::TotalConflict { .. }));
    }
}
