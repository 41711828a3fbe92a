//! Worked examples with exact rational entries and closed-form expectations.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::entropy::ExtendedReal;
use crate::error::{Error, Result};
use crate::operator::{DensityMatrix, HermitianOperator};
use crate::povm::Povm;
use crate::scalar::Float;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExampleName {
    #[serde(rename = "ex3")]
    Ex3,
    #[serde(rename = "ex4")]
    Ex4,
    #[serde(rename = "prop1_counter")]
    Prop1Counter,
}

impl ExampleName {
    pub const ALL: [ExampleName; 3] = [
        ExampleName::Ex3,
        ExampleName::Ex4,
        ExampleName::Prop1Counter,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ExampleName::Ex3 => "ex3",
            ExampleName::Ex4 => "ex4",
            ExampleName::Prop1Counter => "prop1_counter",
        }
    }
}

impl fmt::Display for ExampleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExampleName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExampleName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownFixture(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Quantity {
    /// `S_povm(state)`.
    Entropy { povm: String, state: String },
    /// `D_povm(rho‖sigma)`.
    Relent {
        povm: String,
        rho: String,
        sigma: String,
    },
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Entropy { povm, state } => write!(f, "S_{povm}({state})"),
            Quantity::Relent { povm, rho, sigma } => write!(f, "D_{povm}({rho}‖{sigma})"),
        }
    }
}

/// A closed-form value in bits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpectedValue {
    pub quantity: Quantity,
    pub expected: ExtendedReal<f64>,
    pub closed_form: &'static str,
    pub unit: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `⋑`
    Linear,
    /// `≫`
    Stochastic,
    /// `≥`
    Relent,
    /// `⪰`
    Entropy,
}

impl Relation {
    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::Linear => "⋑",
            Relation::Stochastic => "≫",
            Relation::Relent => "≥",
            Relation::Entropy => "⪰",
        }
    }
}

/// `first R second` is expected to hold (or fail).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectedRelation {
    pub first: String,
    pub second: String,
    pub relation: Relation,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct FixtureBundle<T: Float> {
    pub name: ExampleName,
    pub povms: Vec<(String, Povm<T>)>,
    pub states: Vec<(String, DensityMatrix<T>)>,
    pub values: Vec<ExpectedValue>,
    pub relations: Vec<ExpectedRelation>,
}

impl<T: Float> FixtureBundle<T> {
    pub fn povm(&self, name: &str) -> Result<&Povm<T>> {
        self.povms
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::UnknownFixture(format!("{}:{name}", self.name)))
    }

    pub fn state(&self, name: &str) -> Result<&DensityMatrix<T>> {
        self.states
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
            .ok_or_else(|| Error::UnknownFixture(format!("{}:{name}", self.name)))
    }
}

fn r(n: i64, d: i64) -> Ratio<i64> {
    Ratio::new(n, d)
}

/// Real diagonal operator with exact rational entries.
fn diag<T: Float>(entries: &[Ratio<i64>]) -> HermitianOperator<T> {
    let v: Vec<T> = entries.iter().map(|&x| T::from_ratio(x)).collect();
    HermitianOperator::diagonal(&v)
}

fn povm<T: Float>(elements: &[[Ratio<i64>; 2]]) -> Povm<T> {
    Povm::new(elements.iter().map(|e| diag(e)).collect()).expect("fixture shapes are consistent")
}

fn qubit_states<T: Float>() -> Vec<(String, DensityMatrix<T>)> {
    vec![
        ("rho".into(), DensityMatrix::basis_state(2, 0)),
        ("sigma".into(), DensityMatrix::basis_state(2, 1)),
    ]
}

fn entropy(
    povm: &str,
    state: &str,
    expected: ExtendedReal<f64>,
    closed_form: &'static str,
) -> ExpectedValue {
    ExpectedValue {
        quantity: Quantity::Entropy {
            povm: povm.into(),
            state: state.into(),
        },
        expected,
        closed_form,
        unit: "bits",
    }
}

fn relent(povm: &str, expected: ExtendedReal<f64>, closed_form: &'static str) -> ExpectedValue {
    ExpectedValue {
        quantity: Quantity::Relent {
            povm: povm.into(),
            rho: "rho".into(),
            sigma: "sigma".into(),
        },
        expected,
        closed_form,
        unit: "bits",
    }
}

fn rel(first: &str, second: &str, relation: Relation, holds: bool) -> ExpectedRelation {
    ExpectedRelation {
        first: first.into(),
        second: second.into(),
        relation,
        holds,
    }
}

/// Fixture bundles for the worked examples.
///
/// * `ex3`: computational basis `N`, its noisy version `M` and `N_λ` at `λ = 1/64`;
/// * `ex4`: the noisy basis as `N`, a noisier `M` and `N_λ` at `λ = 1/128`;
/// * `prop1_counter`: a projective `P` linearly related to, but not a
///   post-processing of, `M = (½|0⟩⟨0|, ½|1⟩⟨1|, ½𝟙)`.
///
/// States are `rho = |0⟩⟨0|` and `sigma = |1⟩⟨1|`.
pub fn paper_example<T: Float>(name: ExampleName) -> FixtureBundle<T> {
    use ExtendedReal::{Finite, PosInfinity};
    use Relation::*;
    let log3 = 3f64.log2();
    match name {
        ExampleName::Ex3 => {
            let l = r(1, 64);
            FixtureBundle {
                name,
                povms: vec![
                    ("N".into(), povm(&[[r(1, 1), r(0, 1)], [r(0, 1), r(1, 1)]])),
                    ("M".into(), povm(&[[r(3, 4), r(1, 4)], [r(1, 4), r(3, 4)]])),
                    (
                        "N_lambda".into(),
                        povm(&[[l, r(0, 1)], [r(0, 1), l], [r(63, 64), r(63, 64)]]),
                    ),
                ],
                states: qubit_states(),
                values: vec![
                    entropy("N", "rho", Finite(0.0), "0"),
                    entropy("M", "rho", Finite(2.0 - 0.75 * log3), "2 - (3/4) log2 3"),
                    entropy("N_lambda", "rho", Finite(63.0 / 64.0), "63/64"),
                    relent("M", Finite(0.5 * log3), "(1/2) log2 3"),
                    relent("N", PosInfinity, "inf"),
                    relent("N_lambda", PosInfinity, "inf"),
                ],
                relations: vec![
                    rel("N", "M", Linear, true),
                    rel("N", "M", Stochastic, false),
                    rel("N", "M", Relent, false),
                    rel("N", "M", Entropy, false),
                    rel("M", "N", Stochastic, true),
                    rel("M", "N", Relent, true),
                    rel("M", "N", Entropy, true),
                    rel("N_lambda", "M", Linear, true),
                    rel("N_lambda", "M", Stochastic, false),
                    rel("N_lambda", "M", Relent, false),
                    rel("N_lambda", "M", Entropy, true),
                ],
            }
        }
        ExampleName::Ex4 => {
            let l = r(1, 128);
            let a = l * r(3, 4);
            let b = l * r(1, 4);
            FixtureBundle {
                name,
                povms: vec![
                    ("N".into(), povm(&[[r(3, 4), r(1, 4)], [r(1, 4), r(3, 4)]])),
                    ("M".into(), povm(&[[r(5, 8), r(3, 8)], [r(3, 8), r(5, 8)]])),
                    (
                        "N_lambda".into(),
                        povm(&[[a, b], [b, a], [r(127, 128), r(127, 128)]]),
                    ),
                ],
                states: qubit_states(),
                values: vec![
                    relent("N", Finite(0.5 * log3), "(1/2) log2 3"),
                    relent("M", Finite(0.25 * (5.0f64 / 3.0).log2()), "(1/4) log2(5/3)"),
                    relent("N_lambda", Finite(log3 / 256.0), "(1/256) log2 3"),
                ],
                relations: vec![
                    rel("N", "M", Linear, true),
                    rel("N", "M", Stochastic, false),
                    rel("M", "N", Stochastic, true),
                    rel("N_lambda", "M", Linear, true),
                    rel("N_lambda", "M", Stochastic, false),
                    rel("N_lambda", "M", Relent, true),
                    rel("N_lambda", "M", Entropy, true),
                ],
            }
        }
        ExampleName::Prop1Counter => FixtureBundle {
            name,
            povms: vec![
                ("P".into(), povm(&[[r(1, 1), r(0, 1)], [r(0, 1), r(1, 1)]])),
                (
                    "M".into(),
                    povm(&[[r(1, 2), r(0, 1)], [r(0, 1), r(1, 2)], [r(1, 2), r(1, 2)]]),
                ),
            ],
            states: qubit_states(),
            values: vec![],
            relations: vec![
                rel("P", "M", Linear, true),
                rel("P", "M", Stochastic, false),
                rel("P", "M", Entropy, false),
                rel("M", "P", Stochastic, true),
            ],
        },
    }
}
