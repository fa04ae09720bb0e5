//! Timing comparisons between a fast method and an independent slower one.
//! Answers are compared before any time is reported.

use std::time::{Duration, Instant};

use anyhow::{bail, Result};
use flagcoh_core::divided::{DividedEngine, DividedMethod, DividedQuery};
use flagcoh_core::hanmonsky::{HMMethod, HanMonsky};
use flagcoh_core::lefschetz::{monomial_cis_without_wlp, WlpMethod};
use flagcoh_core::splitting::{splitting_fdr_with, SplittingMethod};
use log::warn;
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Scenario {
    DividedRecursiveVsNim,
    SplittingFastVsDirect,
    HanmonskyConjectureVsOracle,
    WlpSearch,
    Trivial,
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub scenario: Scenario,
    pub instance: String,
    pub fast_label: &'static str,
    pub slow_label: &'static str,
    pub fast_median: Duration,
    pub slow_median: Duration,
    pub runs: usize,
    /// Short rendering of the common answer.
    pub answer: String,
}

impl BenchReport {
    pub fn fast_is_faster(&self) -> bool {
        self.fast_median < self.slow_median
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{:?} {}\n  {:<12} median {:>12.6} s\n  {:<12} median {:>12.6} s\n  agreement: yes ({} runs each), answer: {}",
            self.scenario,
            self.instance,
            self.fast_label,
            self.fast_median.as_secs_f64(),
            self.slow_label,
            self.slow_median.as_secs_f64(),
            self.runs,
            self.answer
        );
        if !self.fast_is_faster() {
            s.push_str(&format!("\n  warning: {} was not faster than {}", self.fast_label, self.slow_label));
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "scenario": format!("{:?}", self.scenario),
            "instance": self.instance,
            "runs": self.runs,
            "agree": true,
            "answer": self.answer,
            "fast": {"method": self.fast_label, "median_seconds": self.fast_median.as_secs_f64()},
            "slow": {"method": self.slow_label, "median_seconds": self.slow_median.as_secs_f64()},
            "fast_is_faster": self.fast_is_faster(),
        })
    }
}

fn median(mut v: Vec<Duration>) -> Duration {
    v.sort();
    v[v.len() / 2]
}

/// Runs both closures `runs` times, fails if any pair of answers differ.
fn compare<T: PartialEq + std::fmt::Debug>(
    runs: usize,
    mut fast: impl FnMut() -> Result<T>,
    mut slow: impl FnMut() -> Result<T>,
) -> Result<(Duration, Duration, T)> {
    let runs = runs.max(3);
    let (mut tf, mut ts) = (Vec::new(), Vec::new());
    let mut answer = None;
    for _ in 0..runs {
        let t = Instant::now();
        let a = fast()?;
        tf.push(t.elapsed());
        let t = Instant::now();
        let b = slow()?;
        ts.push(t.elapsed());
        if a != b {
            bail!("methods disagree: {a:?} vs {b:?}");
        }
        answer = Some(a);
    }
    Ok((median(tf), median(ts), answer.expect("at least one run")))
}

/// Instance parameters; unset fields take the scenario defaults.
#[derive(Clone, Debug, Default)]
pub struct BenchParams {
    pub p: Option<u64>,
    pub i: Option<u8>,
    pub d: Option<i64>,
    pub e: Option<i64>,
    pub n: Option<usize>,
    pub r: Option<i64>,
    pub s: Option<u64>,
    pub lengths: Option<Vec<u64>>,
}

pub fn bench(scenario: Scenario, params: &BenchParams, runs: usize) -> Result<BenchReport> {
    let runs = runs.max(3);
    let report = |instance: String, fast_label, slow_label, (fast_median, slow_median, answer): (Duration, Duration, String)| {
        BenchReport { scenario, instance, fast_label, slow_label, fast_median, slow_median, runs, answer }
    };
    let r = match scenario {
        Scenario::DividedRecursiveVsNim | Scenario::Trivial => {
            let trivial = scenario == Scenario::Trivial;
            let q = DividedQuery::new(
                params.i.unwrap_or(if trivial { 0 } else { 1 }),
                params.p.unwrap_or(if trivial { 7 } else { 2 }),
                params.d.unwrap_or(if trivial { 3 } else { 6 }),
                params.e.unwrap_or(if trivial { 4 } else { 9 }),
                params.n.unwrap_or(if trivial { 3 } else { 7 }),
            )?;
            let (fast, slow, labels) = if trivial {
                (DividedMethod::Recursive, DividedMethod::Oracle, ("recursive", "oracle"))
            } else {
                if q.p != 2 {
                    bail!("the Nim method needs p = 2");
                }
                (DividedMethod::Nim, DividedMethod::Recursive, ("nim", "recursive"))
            };
            let out = compare(
                runs,
                || Ok(DividedEngine::new().compute(q, fast)?),
                || Ok(DividedEngine::new().compute(q, slow)?),
            )?;
            let instance = format!("h^{}(D^{} R({})) n={} p={}", q.i, q.d, q.e, q.n, q.p);
            report(instance, labels.0, labels.1, (out.0, out.1, format!("dimension {}", out.2.dimension())))
        }
        Scenario::SplittingFastVsDirect => {
            let (p, d, r) = (params.p.unwrap_or(5), params.d.unwrap_or(60), params.r.unwrap_or(25));
            let out = compare(
                runs,
                || Ok(splitting_fdr_with(p, d, r, SplittingMethod::Interval)?),
                || Ok(splitting_fdr_with(p, d, r, SplittingMethod::Peeling)?),
            )?;
            let plain = flagcoh_core::splitting::forget_equivariance(&out.2);
            let answer = format!("degrees {}..{}", plain[0], plain[plain.len() - 1]);
            report(format!("F^{d}_{r} p={p}"), "interval", "peeling", (out.0, out.1, answer))
        }
        Scenario::HanmonskyConjectureVsOracle => {
            let p = params.p.unwrap_or(3);
            let lengths = params.lengths.clone().unwrap_or_else(|| vec![3, 8, 14, 31]);
            let out = compare(
                runs,
                || Ok(HanMonsky::new(p)?.product(&lengths, HMMethod::Conjecture)?),
                || Ok(HanMonsky::new(p)?.product(&lengths, HMMethod::Oracle)?),
            )?;
            let answer = format!("{} parts", out.2.part_count());
            report(format!("p={p} lengths={lengths:?}"), "conjecture", "oracle", (out.0, out.1, answer))
        }
        Scenario::WlpSearch => {
            let (p, n, s) = (params.p.unwrap_or(5), params.n.unwrap_or(4), params.s.unwrap_or(10));
            let out = compare(
                runs,
                || Ok(monomial_cis_without_wlp(p, n, s, WlpMethod::Summand)?),
                || Ok(monomial_cis_without_wlp(p, n, s, WlpMethod::Sperner)?),
            )?;
            let answer = format!("{} failing tuples", out.2.len());
            report(format!("p={p} n={n} s={s}"), "summand", "sperner", (out.0, out.1, answer))
        }
    };
    if !r.fast_is_faster() {
        warn!("{:?}: {} was not faster than {}", r.scenario, r.fast_label, r.slow_label);
    }
    Ok(r)
}
