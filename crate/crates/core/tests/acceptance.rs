//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails or overruns its time limit.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use zeroerr_core::confusion::{
    build_confusion_graph, build_m_instance_graph, build_m_instance_graph_by_enumeration, builtin_instance,
    construct_or_instance, construct_strong_instance, predict_product_collapse, BuiltinInstance, CollapseVerdict,
};
use zeroerr_core::graph::{
    directed_line_graph, named_graph, or_product, power, strong_product, DirectedGraph, Graph, NamedGraph, ProductKind,
};
use zeroerr_core::invariants::coloring::dsatur_coloring;
use zeroerr_core::invariants::{
    chromatic_number, clique_number, fractional_chromatic, fractional_chromatic_with_budget, independence_number,
    lovasz_theta, verify_g13_structure, xi_bounds,
};
use zeroerr_core::protocol::build_and_verify_protocol;
use zeroerr_core::rates::{casebook, CaseName, RateOptions, Verdict};
use zeroerr_core::representation::{
    builtin_representation, coloring_to_representation, tensor_representation, BuiltinRep, OrthRep, Vectors,
};
use zeroerr_core::{Budget, Error};

/// ϑ agreement with closed forms.
const THETA_TOL: f64 = 1e-6;
/// ϑ product identities.
const THETA_PRODUCT_TOL: f64 = 1e-5;
/// Rates compared against closed forms.
const RATE_TOL: f64 = 1e-6;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn graph(name: NamedGraph) -> Graph {
    named_graph(name).unwrap()
}

fn rep(name: BuiltinRep) -> OrthRep {
    builtin_representation(name).unwrap()
}

fn ldg13() -> Graph {
    directed_line_graph(&DirectedGraph::bidirected(&graph(NamedGraph::G13))).unwrap()
}

fn opts() -> RateOptions {
    RateOptions {
        m_max: 2,
        budget_seconds: 5.0,
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn pentagon_suite() -> Outcome {
    let c5 = graph(NamedGraph::Pentagon);
    let chi = chromatic_number(&c5).map_err(err)?;
    ensure!(chi == 3, "χ(C5) = {chi}");
    let alpha = independence_number(&c5);
    ensure!(alpha == 2, "α(C5) = {alpha}");
    let chi_f = fractional_chromatic(&c5).map_err(err)?;
    ensure!(chi_f.0 == ratio(5, 2), "χ_f(C5) = {chi_f}");
    let theta = lovasz_theta(&c5).map_err(err)?;
    let s5 = 5f64.sqrt();
    ensure!(
        (theta.lower - s5).abs() <= THETA_TOL && (theta.upper - s5).abs() <= THETA_TOL,
        "ϑ(C5) ∈ [{}, {}]",
        theta.lower,
        theta.upper
    );
    let sq = power(&c5, 2, ProductKind::Strong).map_err(err)?;
    let chi2 = chromatic_number(&sq).map_err(err)?;
    ensure!(chi2 == 5, "χ(C5⊠C5) = {chi2}");
    let alpha2 = independence_number(&sq);
    ensure!(alpha2 == 5, "α(C5⊠C5) = {alpha2}");
    let comp = c5.complement();
    let cert = rep(BuiltinRep::C5Bar).transport(&comp).map_err(err)?;
    let xi = xi_bounds(&comp, Some(&cert)).map_err(err)?;
    ensure!(
        (xi.lower, xi.upper) == (3, 3),
        "ξ(C̄5) bracket ({}, {})",
        xi.lower,
        xi.upper
    );
    Ok(format!(
        "χ=3 α=2 χ_f={chi_f} ϑ≈{:.7} χ(⊠2)=5 α(⊠2)=5 ξ=(3,3)",
        theta.midpoint()
    ))
}

fn rate_suite() -> Outcome {
    let half_log5 = 5f64.log2() / 2.0;
    let r = casebook(CaseName::C5Strong, &opts()).map_err(err)?;
    for (name, iv) in [
        ("classical", &r.classical_asymptotic),
        ("quantum", &r.quantum_asymptotic),
    ] {
        ensure!(
            (iv.lo - half_log5).abs() <= RATE_TOL && (iv.hi - half_log5).abs() <= RATE_TOL,
            "f̃ {name} rate [{}, {}]",
            iv.lo,
            iv.hi
        );
    }
    let r = casebook(CaseName::C5Or, &opts()).map_err(err)?;
    ensure!(r.regime == CollapseVerdict::AllOr, "g̃ regime {}", r.regime);
    let target = 2.5f64.log2();
    for (name, iv) in [
        ("classical", &r.classical_asymptotic),
        ("quantum", &r.quantum_asymptotic),
    ] {
        let w = iv.lower_witness().ok_or(format!("g̃ {name} has no lower bound"))?;
        ensure!(
            w.exact.as_deref() == Some("log2(5/2)") && w.bits == target && iv.lo == target,
            "g̃ {name} lower bound {:?} ({})",
            w.exact,
            iv.lo
        );
    }
    ensure!(
        r.notes
            .iter()
            .any(|n| n.contains("classical and quantum rates are equal")),
        "g̃ report does not state equality: {:?}",
        r.notes
    );
    Ok(format!(
        "f̃ both rates {half_log5:.9}; g̃ both rates log2(5/2) with equality stated"
    ))
}

fn collapse_suite() -> Outcome {
    let cases = [
        (BuiltinInstance::FTilde, "strong"),
        (BuiltinInstance::GTilde, "or"),
        (BuiltinInstance::HTilde, "between"),
    ];
    for (b, expect) in cases {
        let f = builtin_instance(b).map_err(err)?;
        let g = build_confusion_graph(&f).map_err(err)?;
        for m in [2, 3] {
            let gm = build_m_instance_graph(&f, m).map_err(err)?;
            let brute = build_m_instance_graph_by_enumeration(&f, m).map_err(err)?;
            ensure!(
                gm.same_labeled_edges(&brute),
                "{b:?} m={m}: factored and enumerated graphs differ"
            );
            let strong = power(&g, m, ProductKind::Strong).map_err(err)?;
            let or = power(&g, m, ProductKind::Or).map_err(err)?;
            let ok = match expect {
                "strong" => gm.same_labeled_edges(&strong),
                "or" => gm.same_labeled_edges(&or),
                _ => {
                    strong.is_spanning_subgraph_of(&gm)
                        && gm.is_spanning_subgraph_of(&or)
                        && !gm.same_labeled_edges(&strong)
                        && !gm.same_labeled_edges(&or)
                }
            };
            ensure!(ok, "{b:?} m={m}: expected {expect}");
        }
    }
    let mut rng = common::rng(0x7431);
    let mut tally = [0usize; 4];
    for k in 0..200 {
        let f = common::random_instance(&mut rng, 5, 5);
        let g = build_confusion_graph(&f).map_err(err)?;
        let verdict = predict_product_collapse(&f).map_err(err)?;
        let g2 = build_m_instance_graph_by_enumeration(&f, 2).map_err(err)?;
        let strong = power(&g, 2, ProductKind::Strong).map_err(err)?;
        let or = power(&g, 2, ProductKind::Or).map_err(err)?;
        let trivial = verdict == CollapseVerdict::Trivial;
        ensure!(
            (verdict == CollapseVerdict::AllStrong || trivial) == g2.same_labeled_edges(&strong),
            "instance {k}: verdict {verdict} vs strong-power equality"
        );
        ensure!(
            (verdict == CollapseVerdict::AllOr || trivial) == g2.same_labeled_edges(&or),
            "instance {k}: verdict {verdict} vs OR-power equality"
        );
        ensure!(
            strong.is_spanning_subgraph_of(&g2) && g2.is_spanning_subgraph_of(&or),
            "instance {k}: sandwich fails"
        );
        tally[verdict as usize] += 1;
    }
    Ok(format!(
        "builtins at m=2,3 match; 200 random instances (strong {}, or {}, between {}, trivial {})",
        tally[0], tally[1], tally[2], tally[3]
    ))
}

fn construction_suite() -> Outcome {
    let mut rng = common::rng(0x7432);
    let mut strong_checked = 0;
    for k in 0..50 {
        let mut g = common::random_graph_with_edge(&mut rng, 6);
        if k % 2 == 0 {
            while common::has_isolated_vertex(&g) {
                g = common::random_graph_with_edge(&mut rng, 6);
            }
        }
        if !common::has_isolated_vertex(&g) {
            let f = construct_strong_instance(&g).map_err(err)?;
            ensure!(
                build_confusion_graph(&f).map_err(err)?.same_labeled_edges(&g),
                "graph {k}: strong G^(1) ≠ G"
            );
            let g2 = build_m_instance_graph_by_enumeration(&f, 2).map_err(err)?;
            let want = power(&g, 2, ProductKind::Strong).map_err(err)?;
            ensure!(g2.same_labeled_edges(&want), "graph {k}: strong G^(2) ≠ G⊠G");
            strong_checked += 1;
        } else {
            ensure!(
                matches!(construct_strong_instance(&g), Err(Error::IsolatedVertex(_))),
                "graph {k}: isolated vertex not rejected"
            );
        }
        let f = construct_or_instance(&g).map_err(err)?;
        ensure!(
            build_confusion_graph(&f).map_err(err)?.same_labeled_edges(&g),
            "graph {k}: OR G^(1) ≠ G"
        );
        let g2 = build_m_instance_graph_by_enumeration(&f, 2).map_err(err)?;
        let want = power(&g, 2, ProductKind::Or).map_err(err)?;
        ensure!(g2.same_labeled_edges(&want), "graph {k}: OR G^(2) ≠ G∨G");
    }
    ensure!(
        strong_checked >= 25,
        "only {strong_checked} strong constructions exercised"
    );
    Ok(format!(
        "50 graphs: OR construction 50/50, strong construction {strong_checked}/{strong_checked}"
    ))
}

fn g13_suite() -> Outcome {
    let g = graph(NamedGraph::G13);
    let chi = chromatic_number(&g).map_err(err)?;
    ensure!(chi == 4, "χ(G13) = {chi}");
    let fc = fractional_chromatic_with_budget(&g, &Budget::unlimited()).map_err(err)?;
    ensure!(fc.value.0 == ratio(35, 11), "χ_f(G13) = {}", fc.value);
    ensure!(
        fc.check_primal(&g),
        "fractional coloring certificate does not cover G13"
    );
    let dual: BigRational = fc.dual.iter().map(|d| d.0.clone()).sum();
    ensure!(dual == ratio(35, 11), "dual certificate sums to {dual}");
    let omega = clique_number(&g);
    ensure!(omega == 3, "ω(G13) = {omega}");
    let comp = g.complement();
    let cert = rep(BuiltinRep::G13Bar).transport(&comp).map_err(err)?;
    let xi = xi_bounds(&comp, Some(&cert)).map_err(err)?;
    ensure!(
        (xi.lower, xi.upper) == (3, 3),
        "ξ(Ḡ13) bracket ({}, {})",
        xi.lower,
        xi.upper
    );
    let r = casebook(CaseName::G13Or, &opts()).map_err(err)?;
    ensure!(
        r.advantage_single == Verdict::Yes && r.advantage_asymptotic == Verdict::Yes,
        "verdicts {:?}/{:?}",
        r.advantage_single,
        r.advantage_asymptotic
    );
    let (q, c) = (r.quantum_asymptotic.hi, r.classical_asymptotic.lo);
    ensure!(
        (q - 3f64.log2()).abs() <= RATE_TOL && (c - (35.0f64 / 11.0).log2()).abs() <= RATE_TOL && q < c,
        "quantum rate {q} vs classical lower bound {c}"
    );
    let rows = verify_g13_structure().map_err(err)?;
    ensure!(rows.len() == 4, "{} structure rows", rows.len());
    Ok(format!(
        "χ=4 χ_f=35/11 (certified) ω=3 ξ=(3,3) yes/yes, log2 3 = {q:.6} < {c:.6}; 4 structure rows"
    ))
}

fn line_graph_suite() -> Outcome {
    let h = ldg13();
    ensure!(h.n() == 48, "𝔏(G13) has {} vertices", h.n());
    let chi = chromatic_number(&h).map_err(err)?;
    ensure!(chi == 4, "χ(𝔏(G13)) = {chi}");
    let chi_f = fractional_chromatic(&h).map_err(err)?;
    ensure!(chi_f.0 == ratio(3, 1), "χ_f(𝔏(G13)) = {chi_f}");
    let comp = h.complement();
    let cert = rep(BuiltinRep::LdG13Bar).transport(&comp).map_err(err)?;
    let xi = xi_bounds(&comp, Some(&cert)).map_err(err)?;
    ensure!((xi.lower, xi.upper) == (3, 3), "ξ bracket ({}, {})", xi.lower, xi.upper);
    for case in [CaseName::LdG13Strong, CaseName::LdG13Or] {
        let r = casebook(case, &opts()).map_err(err)?;
        ensure!(
            r.advantage_single == Verdict::Yes && r.advantage_asymptotic == Verdict::No,
            "{case}: verdicts {:?}/{:?}",
            r.advantage_single,
            r.advantage_asymptotic
        );
        for l in &r.levels {
            let want = 3usize.pow(l.m as u32);
            ensure!(l.xi == (want, want), "{case}: m={} ξ bracket {:?}", l.m, l.xi);
        }
    }
    Ok("48 vertices, χ=4, χ_f=3, ξ=(3,3); strong and OR: yes/no, ξ brackets (3^m, 3^m)".into())
}

fn hn_suite() -> Outcome {
    let h = graph(NamedGraph::H(7));
    ensure!(
        h.n() == 64 && h.edge_count() == 1120,
        "h(7): {} vertices, {} edges",
        h.n(),
        h.edge_count()
    );
    let cert = rep(BuiltinRep::HBar(7)).transport(&h.complement()).map_err(err)?;
    ensure!(
        cert.dim() == 8 && matches!(cert.vectors(), Vectors::Exact(_)) && cert.is_valid(),
        "hbar(7) dim {}",
        cert.dim()
    );
    let r = casebook(CaseName::Hn(7), &opts()).map_err(err)?;
    ensure!(
        r.notes.iter().any(|n| n.contains("2^(0.154n − 1)"))
            && r.notes.iter().any(|n| n.contains("no advantage is claimed")),
        "notes {:?}",
        r.notes
    );
    Ok("h(7): 64 vertices, 1120 edges; exact certificate in dimension 8; bound printed with disclaimer".into())
}

fn identity_suite() -> Outcome {
    let mut rng = common::rng(0x7438);
    const TRIALS: usize = 50;
    for k in 0..TRIALS {
        let g = common::random_small_graph(&mut rng, 6);
        let h = common::random_small_graph(&mut rng, 6);
        let (gs, go) = (strong_product(&g, &h).map_err(err)?, or_product(&g, &h).map_err(err)?);
        // complement of a strong product is the OR product of complements
        let co = or_product(&g.complement(), &h.complement()).map_err(err)?;
        ensure!(
            gs.complement().same_labeled_edges(&co),
            "pair {k}: complement identity fails"
        );
        let (ag, ah) = (independence_number(&g), independence_number(&h));
        let (ao, as_) = (independence_number(&go), independence_number(&gs));
        ensure!(
            ao == ag * ah && ao <= as_,
            "pair {k}: α {ao} vs {ag}·{ah}, α(⊠) = {as_}"
        );
        let (cs, co) = (chromatic_number(&gs).map_err(err)?, chromatic_number(&go).map_err(err)?);
        let (cg, ch) = (chromatic_number(&g).map_err(err)?, chromatic_number(&h).map_err(err)?);
        ensure!(cs <= co && co <= cg * ch, "pair {k}: χ {cs} ≤ {co} ≤ {cg}·{ch} fails");
        // tensor products of complement representations
        let rg = coloring_to_representation(&g.complement(), &dsatur_coloring(&g)).map_err(err)?;
        let rh = coloring_to_representation(&h.complement(), &dsatur_coloring(&h)).map_err(err)?;
        let t = tensor_representation(&rg, &rh).map_err(err)?;
        ensure!(
            t.transport(&go.complement()).is_ok(),
            "pair {k}: tensor representation invalid"
        );
    }
    for k in 0..TRIALS {
        let g = common::random_small_graph(&mut rng, 5);
        let h = common::random_small_graph(&mut rng, 5);
        let go = or_product(&g, &h).map_err(err)?;
        let gs = strong_product(&g, &h).map_err(err)?;
        let (fg, fh, fo) = (
            fractional_chromatic(&g).map_err(err)?,
            fractional_chromatic(&h).map_err(err)?,
            fractional_chromatic(&go).map_err(err)?,
        );
        ensure!(fo.0 == &fg.0 * &fh.0, "pair {k}: χ_f(G∨H) = {fo} vs {fg}·{fh}");
        let (tg, th) = (lovasz_theta(&g).map_err(err)?, lovasz_theta(&h).map_err(err)?);
        let (to, ts) = (lovasz_theta(&go).map_err(err)?, lovasz_theta(&gs).map_err(err)?);
        let prod = tg.midpoint() * th.midpoint();
        ensure!(
            (to.midpoint() - prod).abs() <= THETA_PRODUCT_TOL && (ts.midpoint() - prod).abs() <= THETA_PRODUCT_TOL,
            "pair {k}: ϑ(∨) = {}, ϑ(⊠) = {}, product {prod}",
            to.midpoint(),
            ts.midpoint()
        );
        for (x, t) in [(&g, &tg), (&h, &th), (&go, &to)] {
            ensure!(independence_number(x) as f64 <= t.lower + THETA_TOL, "pair {k}: α > ϑ");
            let xi = xi_bounds(x, None).map_err(err)?;
            ensure!(
                xi.lower <= xi.upper && t.lower <= xi.upper as f64 + THETA_TOL,
                "pair {k}: ϑ {} vs ξ bracket ({}, {})",
                t.lower,
                xi.lower,
                xi.upper
            );
        }
    }
    for k in 0..TRIALS {
        let f = common::random_instance(&mut rng, 4, 4);
        let chis: Vec<usize> = (1..=3)
            .map(|m| chromatic_number(&build_m_instance_graph(&f, m)?))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        ensure!(
            chis[1] <= chis[0] * chis[0] && chis[2] <= chis[1] * chis[0],
            "instance {k}: χ(G^(m)) = {chis:?} not sub-multiplicative"
        );
    }
    Ok(format!(
        "{TRIALS} pairs each for product, fractional and ϑ identities; {TRIALS} instances for sub-additivity"
    ))
}

fn protocol_suite() -> Outcome {
    let f = builtin_instance(BuiltinInstance::FTilde).map_err(err)?;
    let c5bar = rep(BuiltinRep::C5Bar);
    let t1 = build_and_verify_protocol(&f, 1, &c5bar).map_err(err)?;
    let pair = tensor_representation(&c5bar, &c5bar).map_err(err)?;
    let t2 = build_and_verify_protocol(&f, 2, &pair).map_err(err)?;
    let g13_or = construct_or_instance(&graph(NamedGraph::G13)).map_err(err)?;
    let t3 = build_and_verify_protocol(&g13_or, 1, &rep(BuiltinRep::G13Bar)).map_err(err)?;
    ensure!(t1.verified && t2.verified && t3.verified, "a protocol did not verify");

    // copy one vector onto another vertex so an orthogonality requirement breaks
    let Vectors::Exact(mut vecs) = c5bar.vectors().clone() else {
        return Err("c5bar is not exact".into());
    };
    let target = c5bar.target().clone();
    let j = (1..target.n())
        .find(|&j| !target.adjacent(0, j))
        .ok_or("no non-neighbour of vertex 0")?;
    vecs[j] = vecs[0].clone();
    let faulty = OrthRep::exact(target.clone(), vecs).map_err(err)?;
    match build_and_verify_protocol(&f, 1, &faulty) {
        Err(Error::VerificationFailure { y, x, x_prime }) => {
            let g = build_confusion_graph(&f).map_err(err)?;
            let (a, b) = (g.index_of_str(&x), g.index_of_str(&x_prime));
            ensure!(
                matches!((a, b), (Some(a), Some(b)) if g.adjacent(a, b)),
                "reported pair ({x}, {x_prime}) is not confusable"
            );
            Ok(format!(
                "3 protocols verified (dims 3, 9, 3); fault reported at y={y}, x={x}, x'={x_prime}"
            ))
        }
        other => Err(format!(
            "faulty certificate was not rejected: {:?}",
            other.map(|t| t.verified)
        )),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("pentagon invariants", 5, pentagon_suite),
        ("pentagon rates", 60, rate_suite),
        ("product collapse", 120, collapse_suite),
        ("instance constructions", 30, construction_suite),
        ("G13", 120, g13_suite),
        ("directed line graph of G13", 300, line_graph_suite),
        ("sign-vector family", 60, hn_suite),
        ("identity properties", 300, identity_suite),
        ("protocols", 60, protocol_suite),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(limit) => Err(format!("took {elapsed:.1?}, limit {limit} s")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({elapsed:.2?}) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({elapsed:.2?}) {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
