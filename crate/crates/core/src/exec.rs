//! Job dispatch: builds the ring (cache-aware), runs the requested
//! operation, and assembles the deterministic report body. One job per
//! invocation; identical inputs produce identical report bodies.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use crate::asymptotics::{
    compare_req_from, hilbert_kunz, limit_estimate, rational_from_decimal, rational_to_f64,
    regularity_verdict_from, tight_closure_evidence, tor_sequences_from, Rational,
};
use crate::cache::{
    make_quotient_ring_cached, residue_field_resolution_cached, sha256_hex, Cache,
};
use crate::error::{Error, Result};
use crate::homology::{empirical_stably_phantom, frobenius_complex};
use crate::jobspec::{Command, JobSpec};
use crate::oracle::oracle_crosscheck;
use crate::report::{
    estimate_out, rational_string, rows_from_sequence, CompareOut, CompareRowOut, CrosscheckOut,
    CrosscheckRowOut, PhantomOut, PhantomRow, Report, ReportBody, ReportMeta, ResolutionOut,
    RingEcho, TcOut, VerdictOut,
};
use crate::resolution::resolution_certificate;

#[derive(Debug, Clone, Default)]
pub struct ExecOptions {
    pub cache_dir: Option<PathBuf>,
    pub threads: usize,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;

fn classify(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::Input(_)
        | Error::Precondition(_)
        | Error::Grading(_)
        | Error::DegenerateRing
        | Error::InvalidMultiplier(_) => EXIT_INPUT,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_COMPUTATION,
    }
}

pub fn execute(job: &JobSpec, opts: &ExecOptions) -> (Report, i32) {
    let started = Instant::now();
    let mut cache = match &opts.cache_dir {
        Some(d) => Cache::at(d.clone()),
        None => Cache::disabled(),
    };
    let mut body = ReportBody {
        tool: "hktor".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        input_hash: sha256_hex(&job.input_hash_text()),
        ring: RingEcho {
            p: job.descriptor.p,
            vars: job.descriptor.names.clone(),
            weights: job.descriptor.weights.clone(),
            order: job.descriptor.order.name().into(),
            ideal: job.ideal.iter().map(|f| f.to_string()).collect(),
            dim: 0,
            equidimensional: job.equidimensional,
        },
        command: job.command.name().into(),
        params: BTreeMap::new(),
        table: Vec::new(),
        estimates: Vec::new(),
        resolution: None,
        verdict: None,
        phantom: None,
        tcevidence: None,
        compare: None,
        crosscheck: None,
        errors: Vec::new(),
    };

    let run = || -> Result<i32> {
        if opts.threads > 0 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
            pool.install(|| run_command(job, &mut cache, &mut body))
        } else {
            run_command(job, &mut cache, &mut body)
        }
    };
    let exit = match std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            body.errors.push(e.to_string());
            classify(&e)
        }
        Err(_) => {
            body.errors.push("internal panic during computation".into());
            EXIT_COMPUTATION
        }
    };
    let meta = ReportMeta {
        elapsed_ms: started.elapsed().as_millis(),
        cache_enabled: cache.enabled(),
        cache_hits: cache.hits.clone(),
        cache_writes: cache.writes.clone(),
    };
    (Report { body, meta }, exit)
}

fn tol_of(job: &JobSpec) -> Result<Rational> {
    match &job.tol {
        Some(t) => rational_from_decimal(t),
        None => Ok(Rational::new(1, 100)),
    }
}

fn run_command(job: &JobSpec, cache: &mut Cache, body: &mut ReportBody) -> Result<i32> {
    let ring = make_quotient_ring_cached(
        &job.descriptor,
        job.ideal.clone(),
        job.equidimensional,
        cache,
    )?;
    body.ring.dim = ring.dim;

    let emax = job.emax.unwrap_or(2);
    let spots = job.spots.clone().unwrap_or_else(|| vec![1]);
    let max_spot = spots.iter().copied().max().unwrap_or(1);
    let length = job.length.unwrap_or(max_spot + 1);
    let tol = tol_of(job)?;

    body.params.insert("emax".into(), emax.to_string());
    body.params.insert(
        "spots".into(),
        spots.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","),
    );
    body.params.insert("length".into(), length.to_string());
    body.params.insert("tol".into(), rational_string(&tol));

    match job.command {
        Command::Resolve => {
            let res = residue_field_resolution_cached(&ring, length, cache)?;
            let cert = resolution_certificate(&res)?;
            body.resolution = Some(ResolutionOut {
                ranks: res.ranks.clone(),
                shifts: res.shifts.clone(),
                certified: cert.certified,
                minimal: cert.complex.is_minimal,
            });
            Ok(EXIT_OK)
        }
        Command::Hk => {
            if emax < 2 {
                return Err(Error::Precondition("hk needs emax >= 2".into()));
            }
            let (seq, est) = hilbert_kunz(&ring, emax)?;
            body.table = rows_from_sequence(&seq);
            body.estimates.push(estimate_out("hilbert_kunz", &est));
            Ok(EXIT_OK)
        }
        Command::Tor => {
            let res = residue_field_resolution_cached(&ring, length, cache)?;
            let seqs = tor_sequences_from(&ring, &res, &spots, emax)?;
            for seq in &seqs {
                body.table.extend(rows_from_sequence(seq));
                if let Ok(est) = limit_estimate(seq) {
                    body.estimates.push(estimate_out(format!("t_{}", seq.spot), &est));
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verdict => {
            let res = residue_field_resolution_cached(&ring, length, cache)?;
            let v = regularity_verdict_from(&ring, &res, &spots, emax, tol)?;
            for s in &v.per_spot {
                body.table.extend(rows_from_sequence(&s.sequence));
                if let Some(est) = &s.estimate {
                    body.estimates.push(estimate_out(format!("t_{}", s.spot), est));
                }
            }
            body.verdict = Some(VerdictOut {
                kind: v.kind.name().into(),
                witness_spot: v.witness_spot,
                oracle_regular: v.oracle_regular,
                inconsistency: v.inconsistency,
                tol: rational_string(&v.tol),
                e_max: v.e_max,
                length: v.length,
                notes: v.notes.clone(),
            });
            if v.inconsistency {
                body.errors.push("verdict flagged an internal inconsistency".into());
                return Ok(EXIT_COMPUTATION);
            }
            Ok(EXIT_OK)
        }
        Command::Phantom => {
            let c = job
                .c
                .as_ref()
                .ok_or_else(|| Error::Input("phantom needs a candidate multiplier c".into()))?;
            let res = residue_field_resolution_cached(&ring, length, cache)?;
            let mut outs = Vec::new();
            for &i in &spots {
                let rep = empirical_stably_phantom(&res, i, c, emax)?;
                outs.push(PhantomOut {
                    spot: rep.spot,
                    multiplier: rep.multiplier.clone(),
                    rows: rep
                        .rows
                        .iter()
                        .map(|(e, b)| PhantomRow { e: *e, annihilates: *b })
                        .collect(),
                    empirically_stably_phantom: rep.empirically_stably_phantom,
                    multiplier_in_r_circ_unverified: rep.multiplier_in_r_circ_unverified,
                });
            }
            body.params.insert("c".into(), c.to_string());
            body.phantom = Some(outs);
            Ok(EXIT_OK)
        }
        Command::TcEvidence => {
            let n = job
                .n_ideal
                .as_ref()
                .ok_or_else(|| Error::Input("tcevidence needs N".into()))?;
            let w = job
                .w_ideal
                .as_ref()
                .ok_or_else(|| Error::Input("tcevidence needs W".into()))?;
            let rep = tight_closure_evidence(&ring, n, w, emax, tol)?;
            body.table = rows_from_sequence(&rep.sequence);
            body.estimates.push(estimate_out("tight_closure_gap", &rep.estimate));
            body.tcevidence = Some(TcOut {
                tol: rational_string(&rep.tol),
                evidence_for_containment: rep.evidence_for_containment,
            });
            Ok(EXIT_OK)
        }
        Command::CompareReq => {
            let req = job
                .req_ideal
                .as_ref()
                .ok_or_else(|| Error::Input("compare-req needs req_ideal".into()))?;
            let spot = spots[0];
            let res = residue_field_resolution_cached(&ring, length.max(spot + 1), cache)?;
            let rep = compare_req_from(&ring, &res, req.clone(), spot, emax, tol)?;
            body.table = rows_from_sequence(&rep.seq_r);
            body.estimates.push(estimate_out("t_i_over_R", &rep.est_r));
            body.estimates.push(estimate_out("t_i_over_Req", &rep.est_req));
            body.compare = Some(CompareOut {
                spot: rep.spot,
                d: rep.d,
                rows: rep
                    .rows
                    .iter()
                    .map(|r| CompareRowOut {
                        e: r.e,
                        q: r.q,
                        lambda_r: r.lambda_r,
                        lambda_req: r.lambda_req,
                        gap: rational_to_f64(&r.gap),
                        gap_exact: rational_string(&r.gap),
                    })
                    .collect(),
                consistent: rep.consistent,
                tol: rational_string(&rep.tol),
            });
            Ok(EXIT_OK)
        }
        Command::Crosscheck => {
            let res = residue_field_resolution_cached(&ring, length, cache)?;
            for &i in &spots {
                if i + 1 > res.length() {
                    return Err(Error::Precondition(format!(
                        "crosscheck spot {i} needs resolution length >= {}",
                        i + 1
                    )));
                }
            }
            let mut rows = Vec::new();
            let mut all_equal = true;
            for &i in &spots {
                for e in 0..=emax {
                    let fe = frobenius_complex(&res, e)?;
                    let rep = oracle_crosscheck(&fe, i)?;
                    all_equal &= rep.equal;
                    rows.push(CrosscheckRowOut {
                        spot: i,
                        e,
                        gb_length: rep.gb_length.unwrap_or(0),
                        dense_length: rep.dense_total,
                        bound: rep.bound,
                        equal: rep.equal,
                    });
                }
            }
            body.crosscheck = Some(CrosscheckOut { instances: rows, all_equal });
            if all_equal {
                Ok(EXIT_OK)
            } else {
                body.errors.push("length paths disagree".into());
                Ok(EXIT_COMPUTATION)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jobspec::parse_jobspec;

    fn run(text: &str) -> (Report, i32) {
        let job = parse_jobspec(text).unwrap();
        execute(&job, &ExecOptions::default())
    }

    #[test]
    fn hk_job_on_regular_plane() {
        let (rep, code) = run("[ring]\np = 5\nvars = x, y\n\n[job]\ncommand = hk\nemax = 3\n");
        assert_eq!(code, EXIT_OK, "{:?}", rep.body.errors);
        assert_eq!(rep.body.table.len(), 4);
        for row in &rep.body.table {
            assert_eq!(row.lambda, row.q * row.q);
        }
        assert_eq!(rep.body.estimates[0].c_exact, "1");
    }

    #[test]
    fn verdict_job_on_node() {
        let (rep, code) = run(
            "[ring]\np = 5\nvars = x, y\nideal = x*y\n\n[job]\ncommand = verdict\nspots = 1\nemax = 3\nlength = 2\n",
        );
        assert_eq!(code, EXIT_OK, "{:?}", rep.body.errors);
        let v = rep.body.verdict.unwrap();
        assert_eq!(v.kind, "NonRegularEvidence");
        assert!(!rep.body.table.is_empty());
    }

    #[test]
    fn deterministic_bodies() {
        let text = "[ring]\np = 5\nvars = x, y\nideal = x*y\n\n[job]\ncommand = verdict\nspots = 1\nemax = 2\nlength = 2\n";
        let (a, _) = run(text);
        let (b, _) = run(text);
        assert_eq!(
            serde_json::to_string(&a.body).unwrap(),
            serde_json::to_string(&b.body).unwrap()
        );
    }

    #[test]
    fn missing_required_parameter_is_input_error() {
        let (rep, code) =
            run("[ring]\np = 5\nvars = x, y\n\n[job]\ncommand = phantom\n");
        assert_eq!(code, EXIT_INPUT);
        assert!(!rep.body.errors.is_empty());
    }

    #[test]
    fn crosscheck_job_runs() {
        let (rep, code) = run(
            "[ring]\np = 5\nvars = x, y\nideal = x*y\n\n[job]\ncommand = crosscheck\nspots = 0, 1\nemax = 1\nlength = 2\n",
        );
        assert_eq!(code, EXIT_OK, "{:?}", rep.body.errors);
        let cc = rep.body.crosscheck.unwrap();
        assert!(cc.all_equal);
        assert_eq!(cc.instances.len(), 4);
    }
}
