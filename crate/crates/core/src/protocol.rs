//! Zero-error quantum protocol from an orthogonal representation of the
//! complement of the m-instance confusion graph: Alice sends |φ(x̄)⟩, Bob
//! measures with the projectors onto the spans of each value class for his ȳ.
//! Verification checks that the class spans are mutually orthogonal.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::confusion::{build_m_instance_graph, FunctionInstance};
use crate::error::{Error, Result};
use crate::graph::{tuples, Graph};
use crate::representation::{OrthRep, Vectors};

/// Largest `|Y|^m` the protocol enumerates.
pub const MAX_SIDE_TUPLES: u128 = 1 << 22;

#[derive(Clone, Debug, Serialize)]
pub struct Decoding {
    pub x: String,
    pub z: String,
    pub certain: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundVerdict {
    pub y: String,
    pub classes: usize,
    pub ok: bool,
    pub decodings: Vec<Decoding>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub y: String,
    pub x: String,
    pub x_prime: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProtocolTranscript {
    pub m: usize,
    pub dim: usize,
    pub rate_bits_per_instance: f64,
    pub verified: bool,
    pub rounds: Vec<RoundVerdict>,
    pub violations: Vec<Violation>,
}

fn render_tuple(parts: Vec<&str>) -> String {
    if parts.len() == 1 {
        parts[0].to_string()
    } else {
        format!("({})", parts.join(","))
    }
}

/// Index map from m-instance vertices to representation vertices, after
/// checking the representation lives on a spanning subgraph of the complement.
fn align(f: &FunctionInstance, m: usize, rep: &OrthRep) -> Result<(Graph, Vec<usize>)> {
    let gm = build_m_instance_graph(f, m)?;
    let t = rep.target();
    if t.n() != gm.n() {
        return Err(Error::RepresentationMismatch(format!(
            "{} representation vertices for {} m-instance vertices",
            t.n(),
            gm.n()
        )));
    }
    let mut map = Vec::with_capacity(gm.n());
    for l in gm.labels() {
        let key = l.to_string();
        let i = t
            .index_of_str(&key)
            .ok_or_else(|| Error::RepresentationMismatch(format!("no vector for `{key}`")))?;
        map.push(i);
    }
    let mut inverse = vec![0; map.len()];
    for (a, &i) in map.iter().enumerate() {
        inverse[i] = a;
    }
    for (a, &ia) in map.iter().enumerate() {
        for b in t.neighbors(ia).iter() {
            // an edge of the target must be a non-edge of G^(m)
            let b = inverse[b];
            if gm.adjacent(a, b) {
                return Err(Error::RepresentationMismatch(format!(
                    "`{}` ~ `{}` in the target but adjacent in the confusion graph",
                    gm.label(a),
                    gm.label(b)
                )));
            }
        }
    }
    Ok((gm, map))
}

fn side_tuples(f: &FunctionInstance, m: usize) -> Result<Vec<Vec<usize>>> {
    let count = (f.ny() as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if count > MAX_SIDE_TUPLES {
        return Err(Error::SizeExceeded {
            what: "side-information tuples".into(),
            size: count,
            limit: MAX_SIDE_TUPLES as usize,
        });
    }
    Ok(tuples(f.ny(), m))
}

/// Supported x̄ (as m-instance indices) for ȳ, grouped by the value f^(m)(x̄,ȳ).
fn classes(f: &FunctionInstance, m: usize, ys: &[usize]) -> BTreeMap<Vec<usize>, Vec<usize>> {
    let nx = f.nx();
    let mut out: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (idx, xs) in tuples(nx, m).into_iter().enumerate() {
        if let Some(z) = f.evaluate(&xs, ys) {
            out.entry(z).or_default().push(idx);
        }
    }
    out
}

/// Runs the protocol for every ȳ and records the verdicts. Errors only when
/// the representation does not fit the instance.
pub fn run_protocol(f: &FunctionInstance, m: usize, rep: &OrthRep) -> Result<ProtocolTranscript> {
    let (gm, map) = align(f, m, rep)?;
    let ys = side_tuples(f, m)?;
    let y_label = |t: &[usize]| render_tuple(t.iter().map(|&y| f.y_labels()[y].as_str()).collect());
    let z_label = |t: &[usize]| render_tuple(t.iter().map(|&z| f.z_labels()[z].as_str()).collect());
    let results: Vec<Option<(RoundVerdict, Option<Violation>)>> = ys
        .par_iter()
        .map(|yt| {
            let cls = classes(f, m, yt);
            if cls.is_empty() {
                return None;
            }
            let groups: Vec<(&Vec<usize>, &Vec<usize>)> = cls.iter().collect();
            let mut violation = None;
            let mut decodings = Vec::new();
            for (gi, (z, members)) in groups.iter().enumerate() {
                for &a in members.iter() {
                    let mut certain = true;
                    for (gj, (_, others)) in groups.iter().enumerate() {
                        if gi == gj {
                            continue;
                        }
                        for &b in others.iter() {
                            if !rep.orthogonal(map[a], map[b]) {
                                certain = false;
                                if violation.is_none() {
                                    violation = Some(Violation {
                                        y: y_label(yt),
                                        x: gm.label(a).to_string(),
                                        x_prime: gm.label(b).to_string(),
                                    });
                                }
                            }
                        }
                    }
                    decodings.push(Decoding {
                        x: gm.label(a).to_string(),
                        z: z_label(z),
                        certain,
                    });
                }
            }
            let round = RoundVerdict {
                y: y_label(yt),
                classes: groups.len(),
                ok: violation.is_none(),
                decodings,
            };
            Some((round, violation))
        })
        .collect();
    let mut rounds = Vec::new();
    let mut violations = Vec::new();
    for (round, v) in results.into_iter().flatten() {
        rounds.push(round);
        violations.extend(v);
    }
    Ok(ProtocolTranscript {
        m,
        dim: rep.dim(),
        rate_bits_per_instance: (rep.dim() as f64).log2() / m as f64,
        verified: violations.is_empty(),
        rounds,
        violations,
    })
}

/// Runs the protocol and fails with the first offending (ȳ, x̄, x̄′) unless
/// every supported pair decodes with certainty.
pub fn build_and_verify_protocol(f: &FunctionInstance, m: usize, rep: &OrthRep) -> Result<ProtocolTranscript> {
    let t = run_protocol(f, m, rep)?;
    if let Some(v) = t.violations.first() {
        return Err(Error::VerificationFailure {
            y: v.y.clone(),
            x: v.x.clone(),
            x_prime: v.x_prime.clone(),
        });
    }
    Ok(t)
}

fn as_complex(rep: &OrthRep, i: usize) -> Vec<Complex64> {
    match rep.vectors() {
        Vectors::Exact(v) => v[i].iter().map(|&c| Complex64::new(c as f64, 0.0)).collect(),
        Vectors::Float(v) => v[i].clone(),
    }
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn orthonormal_basis(vectors: Vec<Vec<Complex64>>) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for mut v in vectors {
        for b in &basis {
            let c = inner(b, &v);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= c * bi;
            }
        }
        let norm = inner(&v, &v).re.sqrt();
        if norm > 1e-9 {
            basis.push(v.into_iter().map(|c| c / norm).collect());
        }
    }
    basis
}

/// Outcome label for the completion projector I − Σ Π.
pub const COMPLETION_OUTCOME: &str = "<completion>";

/// Demonstration sampler: measures |φ(x̄)⟩ with Bob's projectors for ȳ
/// `shots` times and returns the outcome counts (deterministic for a seed).
pub fn sample_measurements(
    f: &FunctionInstance,
    m: usize,
    rep: &OrthRep,
    x_label: &str,
    y_tuple: &[usize],
    shots: usize,
    seed: u64,
) -> Result<BTreeMap<String, usize>> {
    let (gm, map) = align(f, m, rep)?;
    if y_tuple.len() != m || y_tuple.iter().any(|&y| y >= f.ny()) {
        return Err(Error::invalid("side-information tuple has the wrong shape"));
    }
    let a = gm
        .index_of_str(x_label)
        .ok_or_else(|| Error::invalid(format!("unknown x̄ `{x_label}`")))?;
    let psi = {
        let v = as_complex(rep, map[a]);
        let n = inner(&v, &v).re.sqrt();
        v.into_iter().map(|c| c / n).collect::<Vec<_>>()
    };
    let z_label = |t: &[usize]| render_tuple(t.iter().map(|&z| f.z_labels()[z].as_str()).collect());
    let mut outcomes: Vec<(String, f64)> = classes(f, m, y_tuple)
        .iter()
        .map(|(z, members)| {
            let basis = orthonormal_basis(members.iter().map(|&b| as_complex(rep, map[b])).collect());
            (z_label(z), basis.iter().map(|b| inner(b, &psi).norm_sqr()).sum())
        })
        .collect();
    let total: f64 = outcomes.iter().map(|(_, p)| p).sum();
    if total < 1.0 {
        outcomes.push((COMPLETION_OUTCOME.to_string(), 1.0 - total));
    } else {
        for o in &mut outcomes {
            o.1 /= total;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<String, usize> = outcomes.iter().map(|(z, _)| (z.clone(), 0)).collect();
    for _ in 0..shots {
        let mut r: f64 = rng.gen();
        let mut pick = &outcomes[outcomes.len() - 1].0;
        for (z, p) in &outcomes {
            if r < *p {
                pick = z;
                break;
            }
            r -= p;
        }
        *counts.get_mut(pick).unwrap() += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::confusion::{builtin_instance, BuiltinInstance};
    use crate::representation::{builtin_representation, tensor_representation, BuiltinRep};

    #[test]
    fn pentagon_protocols() {
        let f = builtin_instance(BuiltinInstance::FTilde).unwrap();
        let c5 = builtin_representation(BuiltinRep::C5Bar).unwrap();
        let t = build_and_verify_protocol(&f, 1, &c5).unwrap();
        assert!((t.rate_bits_per_instance - 3f64.log2()).abs() < 1e-12);
        let t2 = build_and_verify_protocol(&f, 2, &tensor_representation(&c5, &c5).unwrap()).unwrap();
        assert_eq!(t2.dim, 9);
        assert!(t2.rounds.iter().all(|r| r.decodings.iter().all(|d| d.certain)));
    }

    #[test]
    fn sampler_is_point_mass_on_valid_protocol() {
        let f = builtin_instance(BuiltinInstance::FTilde).unwrap();
        let c5 = builtin_representation(BuiltinRep::C5Bar).unwrap();
        let counts = sample_measurements(&f, 1, &c5, "1", &[0], 100, 7).unwrap();
        assert_eq!(counts.get("1"), Some(&100));
    }
}
