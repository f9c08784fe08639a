//! Uniform result type for every inequality checker.

use serde_json::{json, Value};

use crate::poly::MultiIndex;
use crate::rational::{fmt_rat, fmt_vec, Rat};

/// Explains why a check failed. Variable and slot indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Symmetric exchange fails for `(alpha, beta)` at coordinate `i`.
    Exchange {
        alpha: MultiIndex,
        beta: MultiIndex,
        i: usize,
    },
    /// A term with a negative coefficient.
    NegativeCoefficient { exponent: MultiIndex, coefficient: Rat },
    /// `∂^alpha f` is a quadratic whose Hessian has the given inertia.
    QuadraticSlice {
        alpha: MultiIndex,
        positive: usize,
        zero: usize,
        negative: usize,
    },
    /// The two sides of the Hessian characterization disagree at `x`.
    HessianDisagreement {
        x: Vec<Rat>,
        one_positive_eigenvalue: bool,
        scaled_matrix_nsd: bool,
    },
    Rayleigh {
        x: Vec<Rat>,
        alpha: MultiIndex,
        i: usize,
        j: usize,
    },
    Splitting {
        x: Vec<Rat>,
        beta: MultiIndex,
        gamma: MultiIndex,
    },
    Triple {
        x: Vec<Rat>,
        y: Vec<Rat>,
        z: Vec<Rat>,
    },
    Vectors { vectors: Vec<Vec<Rat>> },
    /// A named failing configuration of bodies or matrices (indices into the input).
    Configuration { description: String },
    /// Subsets of a ground set, as sorted index lists.
    Subsets {
        property: String,
        first: Vec<usize>,
        second: Vec<usize>,
    },
}

impl Witness {
    pub fn to_json(&self) -> Value {
        let mi = |m: &MultiIndex| json!(m.exponents());
        match self {
            Witness::Exchange { alpha, beta, i } => {
                json!({"kind": "exchange", "alpha": mi(alpha), "beta": mi(beta), "i": i})
            }
            Witness::NegativeCoefficient { exponent, coefficient } => json!({
                "kind": "negative-coefficient",
                "exp": mi(exponent),
                "coef": fmt_rat(coefficient),
            }),
            Witness::QuadraticSlice { alpha, positive, zero, negative } => json!({
                "kind": "quadratic-slice",
                "alpha": mi(alpha),
                "inertia": [positive, zero, negative],
            }),
            Witness::HessianDisagreement { x, one_positive_eigenvalue, scaled_matrix_nsd } => json!({
                "kind": "hessian-disagreement",
                "x": fmt_vec(x),
                "one_positive_eigenvalue": one_positive_eigenvalue,
                "scaled_matrix_nsd": scaled_matrix_nsd,
            }),
            Witness::Rayleigh { x, alpha, i, j } => json!({
                "kind": "rayleigh",
                "x": fmt_vec(x),
                "alpha": mi(alpha),
                "i": i,
                "j": j,
            }),
            Witness::Splitting { x, beta, gamma } => json!({
                "kind": "splitting",
                "x": fmt_vec(x),
                "beta": mi(beta),
                "gamma": mi(gamma),
            }),
            Witness::Triple { x, y, z } => json!({
                "kind": "triple",
                "x": fmt_vec(x),
                "y": fmt_vec(y),
                "z": fmt_vec(z),
            }),
            Witness::Vectors { vectors } => json!({
                "kind": "vectors",
                "vectors": vectors.iter().map(|v| fmt_vec(v)).collect::<Vec<_>>(),
            }),
            Witness::Configuration { description } => {
                json!({"kind": "configuration", "description": description})
            }
            Witness::Subsets { property, first, second } => json!({
                "kind": "subsets",
                "property": property,
                "first": first,
                "second": second,
            }),
        }
    }
}

/// Outcome of a checker: `holds`, an optional failure witness, and an
/// optional exact margin whose sign convention each checker documents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub margin: Option<Rat>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict {
            holds: true,
            witness: None,
            margin: None,
        }
    }

    pub fn fail(witness: Witness) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
            margin: None,
        }
    }

    pub fn with_margin(mut self, margin: Rat) -> Self {
        self.margin = Some(margin);
        self
    }

    /// Closed inequality `margin >= 0`; the witness is attached only on failure.
    pub fn from_margin(margin: Rat, witness: impl FnOnce() -> Witness) -> Self {
        use num::Signed;
        let holds = !margin.is_negative();
        Verdict {
            holds,
            witness: if holds { None } else { Some(witness()) },
            margin: Some(margin),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "witness": self.witness.as_ref().map(Witness::to_json),
            "margin": self.margin.as_ref().map(fmt_rat),
        })
    }
}
