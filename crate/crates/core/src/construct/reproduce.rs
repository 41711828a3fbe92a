use std::fmt::Write as _;

use serde::Serialize;

use super::fixtures::{
    paper_example, ExampleName, ExpectedRelation, FixtureBundle, Quantity, Relation,
};
use crate::entropy::{observational_entropy, relative_entropy, EntropyConfig, ExtendedReal};
use crate::error::Result;
use crate::order::{
    decide_entropy_order, decide_linear, decide_relent_order, decide_stochastic, SearchBudget,
    VerdictStatus,
};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Serialize)]
pub struct ValueCheck {
    pub fixture: ExampleName,
    pub quantity: Quantity,
    pub closed_form: &'static str,
    pub expected: ExtendedReal<f64>,
    pub computed: ExtendedReal<f64>,
    pub unit: &'static str,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub fixture: ExampleName,
    pub first: String,
    pub second: String,
    pub relation: Relation,
    pub expected: bool,
    /// `holds`, `refuted` or `unknown`.
    pub observed: VerdictStatus,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReproduceReport {
    pub value_tolerance: f64,
    pub values: Vec<ValueCheck>,
    pub relations: Vec<RelationCheck>,
    pub passed: bool,
}

fn evaluate(
    bundle: &FixtureBundle<f64>,
    q: &Quantity,
    tol: &Tolerances<f64>,
) -> Result<ExtendedReal<f64>> {
    let bits = EntropyConfig::bits();
    match q {
        Quantity::Entropy { povm, state } => Ok(ExtendedReal::Finite(observational_entropy(
            bundle.povm(povm)?,
            bundle.state(state)?,
            &bits,
            tol,
        )?)),
        Quantity::Relent { povm, rho, sigma } => relative_entropy(
            bundle.povm(povm)?,
            bundle.state(rho)?,
            bundle.state(sigma)?,
            &bits,
            tol,
        ),
    }
}

fn observe(
    bundle: &FixtureBundle<f64>,
    r: &ExpectedRelation,
    budget: &SearchBudget,
    tol: &Tolerances<f64>,
) -> Result<VerdictStatus> {
    let a = bundle.povm(&r.first)?;
    let b = bundle.povm(&r.second)?;
    let from_bool = |x: bool| {
        if x {
            VerdictStatus::Holds
        } else {
            VerdictStatus::Refuted
        }
    };
    let bits = EntropyConfig::bits();
    Ok(match r.relation {
        Relation::Linear => from_bool(decide_linear(a, b, tol)?.is_some()),
        Relation::Stochastic => from_bool(decide_stochastic(a, b, tol)?.is_feasible()),
        Relation::Relent => decide_relent_order(a, b, budget, &bits, tol)?.status,
        Relation::Entropy => decide_entropy_order(a, b, budget, &bits, tol)?.status,
    })
}

fn values_match(expected: ExtendedReal<f64>, computed: ExtendedReal<f64>, tol: f64) -> bool {
    match (expected, computed) {
        (ExtendedReal::PosInfinity, ExtendedReal::PosInfinity) => true,
        (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => (a - b).abs() <= tol,
        _ => false,
    }
}

/// Recomputes every fixture value and relation and compares against the
/// closed forms (within `value_tolerance`, in bits) and the expected tables.
pub fn reproduce(
    value_tolerance: f64,
    budget: &SearchBudget,
    tol: &Tolerances<f64>,
) -> Result<ReproduceReport> {
    let mut values = Vec::new();
    let mut relations = Vec::new();
    for name in ExampleName::ALL {
        let bundle = paper_example::<f64>(name);
        for v in &bundle.values {
            let computed = evaluate(&bundle, &v.quantity, tol)?;
            values.push(ValueCheck {
                fixture: name,
                quantity: v.quantity.clone(),
                closed_form: v.closed_form,
                expected: v.expected,
                computed,
                unit: v.unit,
                pass: values_match(v.expected, computed, value_tolerance),
            });
        }
        for r in &bundle.relations {
            let observed = observe(&bundle, r, budget, tol)?;
            let want = if r.holds {
                VerdictStatus::Holds
            } else {
                VerdictStatus::Refuted
            };
            relations.push(RelationCheck {
                fixture: name,
                first: r.first.clone(),
                second: r.second.clone(),
                relation: r.relation,
                expected: r.holds,
                observed,
                pass: observed == want,
            });
        }
    }
    let passed = values.iter().all(|v| v.pass) && relations.iter().all(|r| r.pass);
    Ok(ReproduceReport {
        value_tolerance,
        values,
        relations,
        passed,
    })
}

fn status_word(s: VerdictStatus) -> &'static str {
    match s {
        VerdictStatus::Holds => "holds",
        VerdictStatus::Refuted => "refuted",
        VerdictStatus::Unknown => "unknown",
    }
}

impl ReproduceReport {
    /// Markdown tables of every check; values rounded to 6 decimals.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let mark = |p: bool| if p { "ok" } else { "MISMATCH" };
        let _ = writeln!(
            out,
            "## Values (bits, tolerance {:e})\n",
            self.value_tolerance
        );
        let _ = writeln!(
            out,
            "| fixture | quantity | closed form | expected | computed | |"
        );
        let _ = writeln!(out, "|---|---|---|---|---|---|");
        for v in &self.values {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {:.6} | {:.6} | {} |",
                v.fixture,
                v.quantity,
                v.closed_form,
                v.expected,
                v.computed,
                mark(v.pass)
            );
        }
        let _ = writeln!(out, "\n## Relations\n");
        let _ = writeln!(out, "| fixture | relation | expected | observed | |");
        let _ = writeln!(out, "|---|---|---|---|---|");
        for r in &self.relations {
            let _ = writeln!(
                out,
                "| {} | {} {} {} | {} | {} | {} |",
                r.fixture,
                r.first,
                r.relation.symbol(),
                r.second,
                if r.expected { "holds" } else { "fails" },
                status_word(r.observed),
                mark(r.pass)
            );
        }
        let _ = writeln!(
            out,
            "\n{}",
            if self.passed {
                "All checks passed."
            } else {
                "Some checks failed."
            }
        );
        out
    }
}
