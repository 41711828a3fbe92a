use std::fmt::Write as _;

use povm_order::construct::SeparationParameters;
use povm_order::order::{Certificate, DirectionReport, OrderVerdict, VerdictReason, VerdictStatus};
use povm_order::povm::io::matrix_to_json;
use povm_order::{ConstructedPair, DensityMatrix, ExtendedReal, PairClassification};

pub fn value(v: ExtendedReal<f64>, unit: &str) -> String {
    match v {
        ExtendedReal::Finite(x) => format!("{x:.6} {unit}"),
        ExtendedReal::PosInfinity => "inf".to_string(),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn reason(r: VerdictReason) -> &'static str {
    match r {
        VerdictReason::Stochastic => "post-processing map",
        VerdictReason::Mixing => "mixing certificate",
        VerdictReason::SpanWitness => "span witness",
        VerdictReason::ProjectiveShortcut => "projective shortcut",
        VerdictReason::Search => "search witness",
        VerdictReason::TheoremChain => "implied by the other order",
        VerdictReason::BudgetExhausted => "budget exhausted",
    }
}

fn verdict(v: &OrderVerdict<f64>, unit: &str) -> String {
    let status = match v.status {
        VerdictStatus::Holds => "holds",
        VerdictStatus::Refuted => "refuted",
        VerdictStatus::Unknown => "unknown",
    };
    let mut s = format!("{status} ({})", reason(v.reason));
    if let Some(Certificate::Mixing(c)) = &v.certificate {
        let _ = write!(s, ", λ = {:.6} ≤ {:.6}", c.lambda, c.threshold());
    }
    if let Some(w) = &v.witness {
        if v.status != VerdictStatus::Holds {
            let _ = write!(s, ", margin {}", value(w.margin, unit));
        }
    }
    s
}

fn direction(d: &DirectionReport<f64>, unit: &str) -> [String; 4] {
    let linear = match &d.linear {
        Some(rel) => format!("yes (‖α‖ = {:.6})", rel.entry_l1_norm),
        None => "no".to_string(),
    };
    let stochastic = if d.is_stochastic() {
        "yes".to_string()
    } else {
        format!("no (margin {:.6})", d.stochastic.margin)
    };
    [
        linear,
        stochastic,
        verdict(&d.relent, unit),
        verdict(&d.entropy, unit),
    ]
}

pub fn classification(c: &PairClassification, unit: &str) -> String {
    let labels = [
        "linear ⋑",
        "post-processing ≫",
        "relative entropy ≥",
        "entropy ⪰",
    ];
    let left = direction(&c.n_vs_m, unit);
    let right = direction(&c.m_vs_n, unit);
    let width = left
        .iter()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(0)
        .max(6);
    let mut out = String::new();
    let _ = writeln!(out, "{:<20}{:<w$}  M vs N", "relation", "N vs M", w = width);
    for i in 0..4 {
        let pad = width - left[i].chars().count();
        let _ = writeln!(
            out,
            "{:<20}{}{}  {}",
            labels[i],
            left[i],
            " ".repeat(pad),
            right[i]
        );
    }
    let _ = writeln!(out, "equivalent: {}", yes_no(c.equivalence));
    let _ = writeln!(
        out,
        "projective: N {}, M {}",
        yes_no(c.projective.0),
        yes_no(c.projective.1)
    );
    for (tag, d) in [("N vs M", &c.n_vs_m), ("M vs N", &c.m_vs_n)] {
        for (name, v) in [("entropy", &d.entropy), ("relative entropy", &d.relent)] {
            if let (VerdictStatus::Refuted, Some(w)) = (v.status, &v.witness) {
                let _ = writeln!(out, "{tag} {name} witness ρ:\n{}", matrix(&w.rho));
                if let Some(sigma) = &w.sigma {
                    let _ = writeln!(out, "{tag} {name} witness σ:\n{}", matrix(sigma));
                }
            }
        }
    }
    out
}

fn matrix(state: &DensityMatrix) -> String {
    let cells: Vec<Vec<String>> = matrix_to_json(state.as_operator())
        .iter()
        .map(|row| {
            row.iter()
                .map(|&[re, im]| {
                    if im.abs() < 5e-7 {
                        format!("{re:.6}")
                    } else {
                        format!("{re:.6}{im:+.6}i")
                    }
                })
                .collect()
        })
        .collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    let lines: Vec<String> = cells
        .iter()
        .map(|row| {
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            format!("  {}", padded.join("  "))
        })
        .collect();
    lines.join("\n")
}

pub fn construction(pair: &ConstructedPair, p: &SeparationParameters<f64>) -> String {
    let mut s = String::new();
    let a = &pair.alpha.alpha;
    let _ = writeln!(s, "α (N_j = Σ_i α_ji M_i):");
    for j in 0..a.nrows() {
        let row: Vec<String> = (0..a.ncols())
            .map(|i| format!("{:>10.6}", a[(j, i)]))
            .collect();
        let _ = writeln!(s, "  {}", row.join(" "));
    }
    let _ = writeln!(s, "α stochastic: {}", yes_no(pair.alpha_is_stochastic));
    let _ = writeln!(s, "‖α‖ = {:.6}", p.alpha_norm);
    let _ = writeln!(s, "β = {:.6}", p.beta);
    let _ = writeln!(s, "min volume = {:.6}", p.vol_min);
    let _ = writeln!(s, "λ′ = {:.6}", p.lambda_prime);
    let _ = writeln!(s, "λ″ = {:.6}", p.lambda_double_prime);
    s
}
