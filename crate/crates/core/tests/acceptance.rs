//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use povm_order::construct::{random_povm, random_projective, random_stochastic_map};
use povm_order::entropy::default_step;
use povm_order::operator::random::{
    derive_seed, random_density, random_traceless, seeded_rng, Ensemble,
};
use povm_order::order::{reverify_witness, Certificate, StochasticMap, Target};
use povm_order::povm::measure;
use povm_order::{
    binary_epsilon_mix, build_n_lambda, classify_pair, curve_derivative_closed,
    curve_derivative_numeric, decide_entropy_order, decide_equivalence, decide_linear,
    decide_stochastic, equivalence_witness_maps, invertible_stochastic_pair, kl_divergence,
    mixing_certificate, moment_equality_test, observational_entropy, paper_example, pinsker_bounds,
    postprocess, relative_entropy, reproduce, separation_parameters, ConstructedPair,
    DensityMatrix, EntropyConfig, ExampleName, HermitianOperator, Povm, SearchBudget, Tolerances,
    TracelessHermitian, VerdictStatus,
};
use rand::seq::SliceRandom;
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn tol() -> Tolerances<f64> {
    Tolerances::default()
}

fn bits() -> EntropyConfig {
    EntropyConfig::bits()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn state(d: usize, seed: u64) -> DensityMatrix {
    let ensemble = if seed.is_multiple_of(2) {
        Ensemble::HilbertSchmidt
    } else {
        Ensemble::Pure
    };
    random_density(d, ensemble, seed).unwrap()
}

/// `−Σ p_k log₂(p_k/V_k)` evaluated directly from the operators.
fn oracle_entropy(m: &Povm, rho: &DensityMatrix) -> f64 {
    m.elements()
        .iter()
        .map(|e| {
            let p = e.trace_product(rho.as_operator());
            let v = e.trace();
            if p <= 0.0 {
                0.0
            } else {
                -p * (p / v).log2()
            }
        })
        .sum()
}

fn s(m: &Povm, rho: &DensityMatrix) -> f64 {
    observational_entropy(m, rho, &bits(), &tol()).unwrap()
}

fn d(m: &Povm, rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    relative_entropy(m, rho, sigma, &bits(), &tol())
        .unwrap()
        .to_f64()
}

fn hs_close(a: &Povm, b: &Povm, eps: f64) -> bool {
    a.len() == b.len()
        && a.elements()
            .iter()
            .zip(b.elements())
            .all(|(x, y)| (x - y).hs_norm() <= eps)
}

fn criterion_1() -> Check {
    let report = reproduce(1e-9, &SearchBudget::default(), &tol()).map_err(|e| e.to_string())?;
    let failed: Vec<String> = report
        .values
        .iter()
        .filter(|v| !v.pass)
        .map(|v| {
            format!(
                "{} {} = {} (expected {})",
                v.fixture, v.quantity, v.computed, v.expected
            )
        })
        .chain(report.relations.iter().filter(|r| !r.pass).map(|r| {
            format!(
                "{} {} {} {}",
                r.fixture,
                r.first,
                r.relation.symbol(),
                r.second
            )
        }))
        .collect();
    ensure(report.passed, || failed.join("; "))?;

    let ex3 = paper_example::<f64>(ExampleName::Ex3);
    let zero = ex3.state("rho").unwrap();
    let oracle = oracle_entropy(ex3.povm("M").unwrap(), zero);
    ensure((oracle - (2.0 - 0.75 * 3f64.log2())).abs() < 1e-12, || {
        format!("oracle S_M = {oracle}")
    })?;
    let oracle = oracle_entropy(ex3.povm("N_lambda").unwrap(), zero);
    ensure((oracle - 63.0 / 64.0).abs() < 1e-12, || {
        format!("oracle S_N_lambda = {oracle}")
    })?;
    Ok(format!(
        "{} values within 1e-9 of closed forms, {} relations as expected",
        report.values.len(),
        report.relations.len()
    ))
}

fn criterion_2() -> Check {
    let budget = SearchBudget::default();
    let ex3 = paper_example::<f64>(ExampleName::Ex3);
    let ex4 = paper_example::<f64>(ExampleName::Ex4);
    let classify = |a: &Povm, b: &Povm| {
        classify_pair(a, b, &budget, &bits(), &tol()).map_err(|e| e.to_string())
    };

    let m3 = ex3.povm("M").unwrap();
    let c = classify(ex3.povm("N_lambda").unwrap(), m3)?.n_vs_m;
    ensure(
        c.entropy.status == VerdictStatus::Holds
            && matches!(c.entropy.certificate, Some(Certificate::Mixing(_))),
        || {
            format!(
                "ex3 N_lambda ⪰ M: {:?} via {:?}",
                c.entropy.status, c.entropy.reason
            )
        },
    )?;
    ensure(c.relent.status == VerdictStatus::Refuted, || {
        "ex3 N_lambda ≥ M not refuted".into()
    })?;
    let margin_3 = c.stochastic.margin;
    ensure(!c.is_stochastic() && margin_3 > 1e-4, || {
        format!("ex3 N_lambda ≫ M margin {margin_3}")
    })?;

    let c = classify(ex4.povm("N_lambda").unwrap(), ex4.povm("M").unwrap())?.n_vs_m;
    ensure(
        c.relent.status == VerdictStatus::Holds
            && matches!(c.relent.certificate, Some(Certificate::Mixing(_))),
        || {
            format!(
                "ex4 N_lambda ≥ M: {:?} via {:?}",
                c.relent.status, c.relent.reason
            )
        },
    )?;
    let margin_4 = c.stochastic.margin;
    ensure(!c.is_stochastic(), || "ex4 N_lambda ≫ M feasible".into())?;

    let n3 = ex3.povm("N").unwrap();
    let c = classify(n3, m3)?.n_vs_m;
    ensure(c.is_linear(), || "ex3 N ⋑ M absent".into())?;
    ensure(c.entropy.status == VerdictStatus::Refuted, || {
        "ex3 N ⪰ M not refuted".into()
    })?;
    let w = c.entropy.witness.as_ref().ok_or("no entropy witness")?;
    let reverified =
        reverify_witness(n3, m3, w, &bits(), &tol()).ok_or("witness does not reverify")?;
    let at_zero = oracle_entropy(m3, ex3.state("rho").unwrap())
        - oracle_entropy(n3, ex3.state("rho").unwrap());
    ensure(
        w.margin.to_f64() >= 0.81 - 1e-6
            && reverified.to_f64() >= 0.81 - 1e-6
            && at_zero >= 0.81 - 1e-6,
        || format!("witness margin {} (at |0⟩: {at_zero})", w.margin),
    )?;
    Ok(format!(
        "ex3 N_λ: ⪰ certified, ≥ refuted, ≫ margin {margin_3:.3e}; ex4 N_λ: ≥ certified, ≫ margin {margin_4:.3e}; \
         ex3 N: witness margin {:.6} bits",
        w.margin.to_f64()
    ))
}

fn criterion_3() -> Check {
    let mut checks = 0usize;
    let mut worst = f64::NEG_INFINITY;
    for i in 0..200u64 {
        let dim = 2 + (i % 2) as usize;
        let k = 2 + (i % 3) as usize;
        let m = random_povm::<f64>(dim, k, derive_seed(3, i)).unwrap();
        let lam =
            random_stochastic_map::<f64>(2 + (i % 4) as usize, k, derive_seed(33, i)).unwrap();
        let n = postprocess(&m, &lam).unwrap();
        ensure(decide_linear(&n, &m, &tol()).unwrap().is_some(), || {
            format!("pair {i}: no linear relation")
        })?;
        for j in 0..100u64 {
            let rho = state(dim, derive_seed(derive_seed(333, i), 2 * j));
            let sigma = state(dim, derive_seed(derive_seed(333, i), 2 * j + 1));
            let (sn, sm) = (s(&n, &rho), s(&m, &rho));
            let (dn, dm) = (d(&n, &rho, &sigma), d(&m, &rho, &sigma));
            ensure(sn >= sm - 1e-9, || {
                format!("pair {i} state {j}: S_N {sn} < S_M {sm}")
            })?;
            ensure(dn <= dm + 1e-9, || {
                format!("pair {i} state {j}: D_N {dn} > D_M {dm}")
            })?;
            if j == 0 {
                ensure((sn - oracle_entropy(&n, &rho)).abs() < 1e-12, || {
                    format!("pair {i}: oracle mismatch")
                })?;
            }
            worst = worst.max(sm - sn).max(dn - dm);
            checks += 1;
        }
    }
    Ok(format!(
        "200 pairs × 100 states ({checks} checks), largest excess {worst:.2e}"
    ))
}

/// Splits every element into weighted pieces, merges some pieces of the same
/// parent back together, pads with a zero element and shuffles.
fn split_merge_permute(m: &Povm, seed: u64) -> Povm {
    let mut rng = seeded_rng(seed);
    let mut out: Vec<HermitianOperator> = Vec::new();
    for e in m.elements() {
        let pieces = rng.random_range(1..=3usize);
        let mut w: Vec<f64> = (0..pieces).map(|_| rng.random_range(0.2..1.0)).collect();
        let total: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= total);
        if pieces == 3 && rng.random_bool(0.5) {
            let merged = w.pop().unwrap();
            w[0] += merged;
        }
        out.extend(w.iter().map(|&x| e.scale(x)));
    }
    if rng.random_bool(0.3) {
        out.push(HermitianOperator::zeros(m.dim()));
    }
    out.shuffle(&mut rng);
    Povm::new(out).unwrap()
}

/// Mixes the first two outcomes with weight `delta`.
fn blur(m: &Povm, delta: f64) -> Povm {
    let k = m.len();
    let rows: Vec<Vec<f64>> = (0..k)
        .map(|j| {
            (0..k)
                .map(|i| match (j, i) {
                    (0, 0) | (1, 1) => 1.0 - delta,
                    (0, 1) | (1, 0) => delta,
                    _ if i == j => 1.0,
                    _ => 0.0,
                })
                .collect()
        })
        .collect();
    postprocess(m, &StochasticMap::from_rows(&rows, &tol()).unwrap()).unwrap()
}

fn criterion_4() -> Check {
    let t = tol();
    let mut equivalent = 0;
    for i in 0..100u64 {
        let dim = 2 + (i % 2) as usize;
        let k = 2 + (i % 3) as usize;
        let m = random_povm::<f64>(dim, k, derive_seed(4, i)).unwrap();
        let constructed_equivalent = i < 50;
        let n = if constructed_equivalent {
            split_merge_permute(&m, derive_seed(44, i))
        } else {
            let delta = 0.05 + 0.25 * (i - 50) as f64 / 50.0;
            split_merge_permute(&blur(&m, delta), derive_seed(44, i))
        };
        let eq = decide_equivalence(&n, &m, &t).unwrap();
        let two_sided = decide_stochastic(&n, &m, &t).unwrap().is_feasible()
            && decide_stochastic(&m, &n, &t).unwrap().is_feasible();
        let moments = moment_equality_test(&n, &m, 4, 2, derive_seed(444, i), &t).unwrap();
        ensure(
            eq == constructed_equivalent && two_sided == eq && moments == eq,
            || format!("pair {i}: equivalence {eq}, two-sided {two_sided}, moments {moments}"),
        )?;
        if !constructed_equivalent {
            continue;
        }
        equivalent += 1;
        for j in 0..100u64 {
            let rho = state(dim, derive_seed(derive_seed(4444, i), j));
            let (sn, sm) = (s(&n, &rho), s(&m, &rho));
            ensure((sn - sm).abs() <= 1e-9, || {
                format!("pair {i} state {j}: S_N {sn} ≠ S_M {sm}")
            })?;
        }
        let (m_to_n, n_to_m) = equivalence_witness_maps(&n, &m, &t)
            .unwrap()
            .ok_or("no witness maps")?;
        ensure(
            hs_close(&m_to_n.apply(&m).unwrap(), &n, 1e-9)
                && hs_close(&n_to_m.apply(&n).unwrap(), &m, 1e-9),
            || format!("pair {i}: witness maps do not reconstruct"),
        )?;
    }
    Ok(format!(
        "100 pairs agree across canonical forms, LP and moments; {equivalent} equivalent pairs have equal entropies and reconstructing maps"
    ))
}

fn criterion_5() -> Check {
    let t = tol();
    let z = TracelessHermitian::new(HermitianOperator::pauli_z(), &t).unwrap();
    let computational = Povm::new(vec![
        HermitianOperator::basis_projector(2, 0),
        HermitianOperator::basis_projector(2, 1),
    ])
    .unwrap();
    let mut instances = vec![(computational, z)];
    for i in 0..49u64 {
        let dim = 2 + (i % 2) as usize;
        let m = random_povm::<f64>(dim, 2 + (i % 4) as usize, derive_seed(5, i)).unwrap();
        let x = random_traceless::<f64>(dim, derive_seed(55, i)).unwrap();
        let x = TracelessHermitian::new(x.as_operator().scale(1.0 / x.as_operator().hs_norm()), &t)
            .unwrap();
        instances.push((m, x));
    }
    let z2 = curve_derivative_closed(&instances[0].0, &instances[0].1, 2, &t).unwrap();
    ensure((z2 - 4.0).abs() < 1e-12, || {
        format!("z_2 = {z2}, expected 4 nats")
    })?;
    let mut worst = 0.0f64;
    for (idx, (m, x)) in instances.iter().enumerate() {
        let scale = curve_derivative_closed(m, x, 2, &t).unwrap().abs();
        for n in 2..=4 {
            let closed = curve_derivative_closed(m, x, n, &t).unwrap();
            let h = default_step(x);
            let numeric = curve_derivative_numeric(m, x, n, h, &t).unwrap();
            let rel = (closed - numeric).abs() / closed.abs().max(scale);
            worst = worst.max(rel);
            ensure(rel <= 1e-4, || {
                format!("instance {idx}, n = {n}: closed {closed}, numeric {numeric}")
            })?;
        }
    }
    Ok(format!(
        "50 instances × n ∈ {{2,3,4}}, z₂ = {z2} nats, worst relative error {worst:.2e}"
    ))
}

fn criterion_6() -> Check {
    let mut rng = seeded_rng(6);
    let mut drawn = 0;
    while drawn < 10_000 {
        let k = rng.random_range(2..=6usize);
        let mut draw = || {
            let v: Vec<f64> = (0..k)
                .map(|_| -rng.random_range(1e-12f64..1.0).ln())
                .collect();
            let total: f64 = v.iter().sum();
            v.into_iter().map(|x| x / total).collect::<Vec<f64>>()
        };
        let p = draw();
        let q = draw();
        if q.iter().copied().fold(1.0, f64::min) < 1e-3 {
            continue;
        }
        drawn += 1;
        let kl: f64 = p
            .iter()
            .zip(&q)
            .map(|(&a, &b)| if a > 0.0 { a * (a / b).log2() } else { 0.0 })
            .sum();
        let (lower, upper) = pinsker_bounds(&p, &q, &bits()).unwrap();
        let lib = kl_divergence(&p, &q, &bits()).unwrap().to_f64();
        let tv: f64 = 0.5 * p.iter().zip(&q).map(|(a, b)| (a - b).abs()).sum::<f64>();
        ensure((lib - kl).abs() <= 1e-12 * kl.max(1.0), || {
            format!("KL {lib} vs oracle {kl}")
        })?;
        ensure((lower - 2.0 * tv * tv / 2f64.ln()).abs() <= 1e-12, || {
            "lower bound formula".into()
        })?;
        ensure(lower <= kl + 1e-12 && kl <= upper.to_f64() + 1e-12, || {
            format!("{lower} ≤ {kl} ≤ {upper} fails for p = {p:?}, q = {q:?}")
        })?;
    }

    let mut pairs = 0;
    let mut worst = 0.0f64;
    for name in ExampleName::ALL {
        let bundle = paper_example::<f64>(name);
        for (a_name, a) in &bundle.povms {
            for (b_name, b) in &bundle.povms {
                if a_name == b_name {
                    continue;
                }
                let Some(rel) = decide_linear(a, b, &tol()).unwrap() else {
                    continue;
                };
                pairs += 1;
                for j in 0..10_000u64 {
                    let rho = state(a.dim(), derive_seed(66, 2 * j));
                    let sigma = state(a.dim(), derive_seed(66, 2 * j + 1));
                    let tv = |m: &Povm| {
                        let p = measure(m, &rho, &tol()).unwrap().probs;
                        let q = measure(m, &sigma, &tol()).unwrap().probs;
                        0.5 * p.iter().zip(&q).map(|(x, y)| (x - y).abs()).sum::<f64>()
                    };
                    let (ta, tb) = (tv(a), tv(b));
                    ensure(ta <= rel.entry_l1_norm * tb + 1e-12, || {
                        format!(
                            "{name} {a_name} vs {b_name}: t = {ta} > ‖α‖ t = {}",
                            rel.entry_l1_norm * tb
                        )
                    })?;
                    if tb > 1e-9 {
                        worst = worst.max(ta / (rel.entry_l1_norm * tb));
                    }
                }
            }
        }
    }
    Ok(format!(
        "10000 distribution pairs inside the sandwich; {pairs} linearly related fixture pairs × 10000 state pairs, max t_N/(‖α‖t_M) = {worst:.3}"
    ))
}

fn criterion_7() -> Check {
    let budget = SearchBudget {
        samples: 2000,
        ..SearchBudget::default()
    };
    let t = tol();
    let (mut holds, mut refuted, mut witnessed) = (0, 0, 0);
    for i in 0..50u64 {
        let dim = 2 + (i % 3) as usize;
        let fine = random_projective::<f64>(dim, dim, derive_seed(7, i)).unwrap();
        let (n, m) = match i % 3 {
            // coarse-graining of the same basis
            0 => {
                let blocks = 1 + (i as usize / 3) % dim;
                let mut owner: Vec<usize> = (0..dim).map(|k| k % blocks).collect();
                owner.shuffle(&mut seeded_rng(derive_seed(77, i)));
                let rows: Vec<Vec<f64>> = (0..blocks)
                    .map(|b| {
                        owner
                            .iter()
                            .map(|&o| if o == b { 1.0 } else { 0.0 })
                            .collect()
                    })
                    .collect();
                let coarse =
                    postprocess(&fine, &StochasticMap::from_rows(&rows, &t).unwrap()).unwrap();
                (coarse, fine)
            }
            // independent bases
            1 => (
                random_projective(dim, 1 + (i as usize) % dim, derive_seed(777, i)).unwrap(),
                fine,
            ),
            // relabeling
            _ => {
                let mut order: Vec<usize> = (0..dim).collect();
                order.shuffle(&mut seeded_rng(derive_seed(7777, i)));
                (fine.permuted(&order).unwrap(), fine)
            }
        };
        let c = classify_pair(&n, &m, &budget, &bits(), &t).map_err(|e| e.to_string())?;
        for (tag, (a, b, r)) in [
            ("N vs M", (&n, &m, &c.n_vs_m)),
            ("M vs N", (&m, &n, &c.m_vs_n)),
        ] {
            let feasible = r.is_stochastic();
            let expected = if feasible {
                VerdictStatus::Holds
            } else {
                VerdictStatus::Refuted
            };
            ensure(
                r.is_linear() == feasible
                    && r.relent.status == expected
                    && r.entropy.status == expected,
                || {
                    format!(
                        "pair {i} {tag}: stochastic {feasible}, linear {}, relent {:?}, entropy {:?}",
                        r.is_linear(),
                        r.relent.status,
                        r.entropy.status
                    )
                },
            )?;
            if feasible {
                holds += 1;
                continue;
            }
            refuted += 1;
            let v = decide_entropy_order(a, b, &budget, &bits(), &t).unwrap();
            if let Some(w) = v.witness.as_ref().filter(|_| v.is_refuted()) {
                if reverify_witness(a, b, w, &bits(), &t).is_some() {
                    witnessed += 1;
                }
            }
        }
    }
    let prop1 = paper_example::<f64>(ExampleName::Prop1Counter);
    let c = classify_pair(
        prop1.povm("P").unwrap(),
        prop1.povm("M").unwrap(),
        &budget,
        &bits(),
        &t,
    )
    .map_err(|e| e.to_string())?;
    let margin = c.n_vs_m.stochastic.margin;
    ensure(
        c.n_vs_m.is_linear() && !c.n_vs_m.is_stochastic() && margin > 1e-4,
        || {
            format!(
                "counterexample: linear {}, stochastic margin {margin}",
                c.n_vs_m.is_linear()
            )
        },
    )?;
    Ok(format!(
        "50 pairs: {holds} directions hold, {refuted} refuted ({witnessed} with explicit entropy witnesses); \
         counterexample ≫ margin {margin:.3e}"
    ))
}

fn mixing_family(
    label: String,
    pair: &ConstructedPair,
    states: u64,
    out: &mut Vec<String>,
) -> Result<(), String> {
    let t = tol();
    let p = separation_parameters(&pair.n, &pair.m, &t).map_err(|e| e.to_string())?;
    ensure(
        p.lambda_prime <= 0.5 && p.lambda_double_prime <= 0.5,
        || {
            format!(
                "{label}: λ′ = {}, λ″ = {}",
                p.lambda_prime, p.lambda_double_prime
            )
        },
    )?;
    let dim = pair.n.dim();
    let entropy_side = build_n_lambda(&pair.n, p.lambda_double_prime).unwrap();
    mixing_certificate(&entropy_side, &pair.m, Target::Entropy, &t)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| format!("{label}: no entropy certificate at λ″"))?;
    let relent_side = if p.lambda_prime > 0.0 {
        let nl = build_n_lambda(&pair.n, p.lambda_prime).unwrap();
        mixing_certificate(&nl, &pair.m, Target::Relent, &t)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{label}: no relative-entropy certificate at λ′"))?;
        Some(nl)
    } else {
        None
    };
    for j in 0..states {
        let rho = state(dim, derive_seed(8, 2 * j));
        let (sn, sm) = (s(&entropy_side, &rho), s(&pair.m, &rho));
        ensure(sn >= sm - 1e-9, || {
            format!("{label} state {j}: S_Nλ {sn} < S_M {sm}")
        })?;
        if let Some(nl) = &relent_side {
            let sigma = state(dim, derive_seed(8, 2 * j + 1));
            let (dn, dm) = (d(nl, &rho, &sigma), d(&pair.m, &rho, &sigma));
            ensure(dn <= dm + 1e-9, || {
                format!("{label} state {j}: D_Nλ {dn} > D_M {dm}")
            })?;
        }
    }
    out.push(format!(
        "{label} λ″={:.2e}{}",
        p.lambda_double_prime,
        if relent_side.is_some() {
            format!(" λ′={:.2e}", p.lambda_prime)
        } else {
            String::new()
        }
    ));
    Ok(())
}

fn criterion_8() -> Check {
    let t = tol();
    let mut summary = Vec::new();
    let p0 = HermitianOperator::basis_projector(2, 0);
    let p1 = HermitianOperator::basis_projector(2, 1);
    for eps in [0.05, 0.25, 0.4] {
        let first = binary_epsilon_mix(&p0, &p1, eps, &t).map_err(|e| e.to_string())?;
        mixing_family(format!("ε={eps}"), &first, 10_000, &mut summary)?;
        let second = binary_epsilon_mix(&first.m.elements()[0], &first.m.elements()[1], eps, &t)
            .map_err(|e| e.to_string())?;
        mixing_family(format!("ε={eps} (noisy)"), &second, 10_000, &mut summary)?;
    }
    let basis = Povm::new(
        (0..3)
            .map(|k| HermitianOperator::basis_projector(3, k))
            .collect(),
    )
    .unwrap();
    let rows = vec![
        vec![0.8, 0.1, 0.1],
        vec![0.1, 0.8, 0.1],
        vec![0.1, 0.1, 0.8],
    ];
    let lam = StochasticMap::from_rows(&rows, &t).unwrap();
    let first = invertible_stochastic_pair(&basis, &lam, &t).map_err(|e| e.to_string())?;
    mixing_family("d=3".into(), &first, 10_000, &mut summary)?;
    let second = invertible_stochastic_pair(&first.m, &lam, &t).map_err(|e| e.to_string())?;
    mixing_family("d=3 (noisy)".into(), &second, 10_000, &mut summary)?;
    Ok(format!(
        "10000 states per family, no violations: {}",
        summary.join(", ")
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("worked-value regression", criterion_1),
        ("separation fixtures", criterion_2),
        ("post-processing chain", criterion_3),
        ("equivalence suite", criterion_4),
        ("derivative formula", criterion_5),
        ("Pinsker sandwich", criterion_6),
        ("projective suite", criterion_7),
        ("mixing bulk check", criterion_8),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {} ({name}): {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
