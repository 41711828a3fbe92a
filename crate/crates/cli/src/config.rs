use povm_order::{EntropyConfig, LogBase, SearchBudget, Tolerances};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::GlobalArgs;

/// Effective settings of one invocation, echoed with every result.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub log_base: LogBase,
    pub tolerances: Tolerances<f64>,
    pub budget: SearchBudget,
    pub output: &'static str,
    #[serde(skip)]
    pub json: bool,
}

fn positive(name: &str, v: Option<f64>, default: f64) -> CliResult<f64> {
    match v {
        None => Ok(default),
        Some(x) if x.is_finite() && x > 0.0 => Ok(x),
        Some(x) => Err(CliError::Usage(format!(
            "--{name} must be positive, got {x}"
        ))),
    }
}

impl RunConfig {
    pub(crate) fn from_args(args: &GlobalArgs) -> CliResult<Self> {
        let defaults = Tolerances::<f64>::default();
        let tolerances = Tolerances {
            psd: positive("tol-psd", args.tol_psd, defaults.psd)?,
            span: positive("tol-span", args.tol_span, defaults.span)?,
            stoch: positive("tol-stoch", args.tol_stoch, defaults.stoch)?,
            ..defaults
        };
        let mut budget = SearchBudget::with_seed(args.seed);
        if let Some(s) = args.samples {
            budget.samples = s;
        }
        Ok(RunConfig {
            seed: args.seed,
            log_base: if args.log_base == "e" {
                LogBase::E
            } else {
                LogBase::Two
            },
            tolerances,
            budget,
            output: if args.json { "json" } else { "human" },
            json: args.json,
        })
    }

    pub fn entropy(&self) -> EntropyConfig {
        EntropyConfig {
            log_base: self.log_base,
        }
    }

    pub fn unit(&self) -> &'static str {
        self.log_base.unit()
    }

    pub fn summary(&self) -> String {
        let t = &self.tolerances;
        format!(
            "config: seed={} log-base={} tol-psd={:e} tol-span={:e} tol-stoch={:e} samples={} refine-steps={}",
            self.seed,
            if self.log_base == LogBase::E { "e" } else { "2" },
            t.psd,
            t.span,
            t.stoch,
            self.budget.samples,
            self.budget.refine_steps
        )
    }
}
