//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use chrono::NaiveDate;
use inkspace::config::LoadedConfig;
use inkspace::synth::{generate, sample_config, write_corpus, SynthOptions};
use inkspace::Run;
use inkspace_core::corpus::Article;
use inkspace_core::embeddings::{
    align, anchor_residual, popularity_timeline, select_anchors, train_sgns, weat_score, AlignOptions,
    AssociationSets, EmbeddingSpace, SgnsParams,
};
use inkspace_core::embeddings::differential_association;
use inkspace_core::geo::{bottom_share, homogeneity_inverse_std, yearly_geo_trends, Gazetteer};
use inkspace_core::metrics::{compute_series, imbalance, MetricId, PartyPair};
use inkspace_core::nlp::Analyzers;
use inkspace_core::probe::{
    popularity_from_votes, probe, token_delta_ranking, FixedBackend, NgramBackend, VOTE_PROMPT,
};
use inkspace_core::tagging::LexiconSet;
use inkspace_core::timeseries::{cluster, dtw_distance, ClusterOptions, LabeledSeries};
use inkspace_core::Error;
use linalg::*;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

/// Dense-matrix helpers for the rotation fixtures.
mod linalg {
    pub type Mat = Vec<Vec<f64>>;

    pub fn matmul(a: &Mat, b: &Mat) -> Mat {
        let (n, k, m) = (a.len(), b.len(), b[0].len());
        (0..n).map(|i| (0..m).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
    }

    /// Random orthogonal matrix by Gram-Schmidt on Gaussian columns.
    pub fn random_rotation(dim: usize, mut gauss: impl FnMut() -> f64) -> Mat {
        let mut cols: Vec<Vec<f64>> = Vec::new();
        while cols.len() < dim {
            let mut v: Vec<f64> = (0..dim).map(|_| gauss()).collect();
            for c in &cols {
                let d: f64 = v.iter().zip(c).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(c).for_each(|(x, y)| *x -= d * y);
            }
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-6 {
                cols.push(v.into_iter().map(|x| x / n).collect());
            }
        }
        (0..dim).map(|i| (0..dim).map(|j| cols[j][i]).collect()).collect()
    }
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn article(id: usize, outlet: &str, date: NaiveDate, headline: &str, content: &str) -> Article {
    Article::from_parts(&format!("{outlet}-{id}"), outlet, &date.format("%Y-%m-%d").to_string(), headline, content)
        .expect("valid article")
}

fn month_date(start_year: i32, month_index: usize, day: u32) -> NaiveDate {
    let y = start_year + (month_index / 12) as i32;
    NaiveDate::from_ymd_opt(y, (month_index % 12) as u32 + 1, day).expect("valid date")
}

// 1

fn imbalance_algebra() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let tol = 1e-12;
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for _ in 0..10_000 {
        let b: f64 = rng.random_range(0.0..1e3);
        let c: f64 = rng.random_range(0.0..1e3);
        let k: f64 = rng.random_range(1e-3..1e3);
        let v = imbalance(b, c).unwrap().expect("nonzero");
        let anti = imbalance(c, b).unwrap().unwrap();
        let scaled = imbalance(k * b, k * c).unwrap().unwrap();
        let oracle = (b - c) / (b + c);
        let err = [(v + anti).abs(), (v - scaled).abs(), (v - oracle).abs()].into_iter().fold(0.0, f64::max);
        worst = worst.max(err);
        if err > tol || !(-1.0..=1.0).contains(&v) {
            failures += 1;
        }
        if imbalance(b, 0.0).unwrap() != Some(1.0) || imbalance(0.0, c).unwrap() != Some(-1.0) {
            failures += 1;
        }
    }
    let elapsed = started.elapsed();
    let ok = failures == 0 && elapsed < Duration::from_secs(1);
    outcome(ok, format!("10000 pairs, {failures} failures, worst error {worst:.1e}, {elapsed:.2?}"))
}

// 2

fn planted_coverage() -> Outcome {
    let mut articles = Vec::new();
    let mut id = 0;
    for m in 0..24 {
        let b_heads = if m < 12 { 7 } else { 3 };
        for i in 0..10 {
            let date = month_date(2012, m, 1 + i as u32);
            let (headline, content) = if i < b_heads {
                ("BJP rally draws crowd", "The BJP held a rally in the city today with many supporters present.")
            } else {
                ("Congress rally draws crowd", "Congress spoke.")
            };
            articles.push(article(id, "planted", date, headline, content));
            id += 1;
        }
    }
    let lex = LexiconSet::default();
    let pair = PartyPair::default();
    let an = Analyzers::default();
    let head = &compute_series(&articles, &lex, &pair, MetricId::CovHead, &an).unwrap()[0];
    let content = &compute_series(&articles, &lex, &pair, MetricId::CovContent, &an).unwrap()[0];
    let head_ok = head.points.iter().enumerate().all(|(m, p)| p.value == Some(if m < 12 { 0.4 } else { -0.4 }));
    // Planted word shares: months 1-12 favour B in words as well as headlines,
    // months 13-24 put 3 long B sentences against 7 short C sentences.
    let expected_sign = |m: usize| {
        let (nb, nc): (f64, f64) = if m < 12 { (7.0, 3.0) } else { (3.0, 7.0) };
        let (wb, wc) = (nb * 13.0, nc * 2.0);
        (wb - wc).signum()
    };
    let content_ok =
        content.points.iter().enumerate().all(|(m, p)| p.value.is_some_and(|v| v.signum() == expected_sign(m)));
    outcome(
        head_ok && content_ok && head.points.len() == 24,
        format!("cov_head exact +/-0.4 over 24 months: {head_ok}; cov_content signs: {content_ok}"),
    )
}

// 3

fn brute_force_dtw(a: &[f64], b: &[f64]) -> f64 {
    fn go(a: &[f64], b: &[f64], i: usize, j: usize) -> f64 {
        let here = (a[i] - b[j]).abs();
        if i + 1 == a.len() && j + 1 == b.len() {
            return here;
        }
        let mut best = f64::INFINITY;
        if i + 1 < a.len() {
            best = best.min(go(a, b, i + 1, j));
        }
        if j + 1 < b.len() {
            best = best.min(go(a, b, i, j + 1));
        }
        if i + 1 < a.len() && j + 1 < b.len() {
            best = best.min(go(a, b, i + 1, j + 1));
        }
        here + best
    }
    go(a, b, 0, 0)
}

fn dtw_oracle() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let values = [0.0, 0.5, -0.5, 1.0, -1.0];
    let mut mismatches = 0;
    for _ in 0..1000 {
        let draw = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            let n = rng.random_range(1..=6);
            (0..n).map(|_| *values.choose(rng).unwrap()).collect()
        };
        let a = draw(&mut rng);
        let b = draw(&mut rng);
        if dtw_distance(&a, &b).unwrap() != brute_force_dtw(&a, &b) {
            mismatches += 1;
        }
    }
    let elapsed = started.elapsed();
    outcome(mismatches == 0 && elapsed < Duration::from_secs(10), format!("1000 pairs, {mismatches} mismatches, {elapsed:.2?}"))
}

// 4

fn clustering_fidelity() -> Outcome {
    let mut hits = 0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(400 + seed);
        let n = 36;
        let mut walk = 0.0;
        let shared: Vec<f64> = (0..n)
            .map(|_| {
                walk += rng.random_range(-0.2..0.2);
                walk
            })
            .collect();
        let jitter = |rng: &mut ChaCha8Rng| -> Vec<Option<f64>> {
            shared.iter().map(|v| Some(v + rng.random_range(-0.05..0.05))).collect()
        };
        let a = jitter(&mut rng);
        let b = jitter(&mut rng);
        let mut walk = 0.0;
        let noise: Vec<Option<f64>> = (0..n)
            .map(|_| {
                walk += rng.random_range(-0.2..0.2);
                Some(walk)
            })
            .collect();
        let series = vec![
            LabeledSeries { label: "noise".into(), values: noise },
            LabeledSeries { label: "shared_a".into(), values: a },
            LabeledSeries { label: "shared_b".into(), values: b },
        ];
        let (_, tree) = cluster(&series, ClusterOptions::default()).unwrap();
        if tree.first_merge_labels() == Some(("shared_a", "shared_b")) {
            hits += 1;
        }
    }
    outcome(hits >= 95, format!("shared pair merged first in {hits}/100 trials"))
}

// 5

fn space_from(year: i32, words: &[String], rows: &Mat) -> EmbeddingSpace {
    EmbeddingSpace::from_rows(year, words.iter().cloned().zip(rows.iter().cloned())).unwrap()
}

fn procrustes_recovery() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let normal = Normal::new(0.0, 1.0).unwrap();
    let sigma = 0.01;
    let mut lines = Vec::new();
    let mut ok = true;
    for dim in [10usize, 50] {
        let n = 400;
        let words: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
        let x: Mat = (0..n).map(|_| (0..dim).map(|_| normal.sample(&mut rng)).collect()).collect();
        let r = random_rotation(dim, || normal.sample(&mut rng));
        let y = matmul(&x, &r);
        let noisy: Mat = y.iter().map(|row| row.iter().map(|v| v + sigma * normal.sample(&mut rng)).collect()).collect();
        let source = space_from(0, &words, &x);
        for (label, target_rows, bound) in [("noiseless", &y, 1e-6), ("noisy", &noisy, 10.0 * sigma)] {
            let target = space_from(1, &words, target_rows);
            let opts = AlignOptions { anchors: n, ..AlignOptions::default() };
            let q = align(&source, &target, &opts).unwrap();
            let anchors = select_anchors(&source, &target, n, &[]);
            let res = anchor_residual(&source, &target, &q, &anchors).unwrap();
            let measured = if label == "noiseless" { res.max } else { res.rms };
            ok &= measured < bound;
            lines.push(format!("dim {dim} {label} {measured:.1e} < {bound:.0e}"));
        }
    }
    outcome(ok, lines.join("; "))
}

// 6

fn weat_correctness() -> Outcome {
    let words = |w: &[&str]| -> Vec<String> { w.iter().map(|s| s.to_string()).collect() };
    // cos(p,a)=3/5, cos(p,b)=4/5, cos(q,a)=1, cos(q,b)=0
    let s = EmbeddingSpace::from_rows(
        0,
        [("p", vec![3.0, 4.0]), ("q", vec![2.0, 0.0]), ("a", vec![1.0, 0.0]), ("b", vec![0.0, 1.0])],
    )
    .unwrap();
    let a1 = words(&["a"]);
    let a2 = words(&["b"]);
    let gp = differential_association("p", &a1, &a2, &s).unwrap();
    let gq = differential_association("q", &a1, &a2, &s).unwrap();
    let sets = AssociationSets::new(["q"], ["p"], ["a"], ["b"]).unwrap();
    let b = weat_score(&sets, &s).unwrap();
    // population SD of {1, -0.2} is 0.6; (1 - (-0.2)) / 0.6 = 2
    let hand_ok = (gp - (-0.2)).abs() < 1e-9 && (gq - 1.0).abs() < 1e-9 && (b - 2.0).abs() < 1e-9;

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut anti_fail = 0;
    for _ in 0..1000 {
        let names = ["s1", "s2", "s3", "t1", "t2", "x1", "x2", "y1", "y2"];
        let rows: Vec<(&str, Vec<f64>)> =
            names.iter().map(|n| (*n, vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)])).collect();
        let space = EmbeddingSpace::from_rows(0, rows).unwrap();
        let sets = AssociationSets::new(["s1", "s2", "s3"], ["t1", "t2"], ["x1", "x2"], ["y1", "y2"]).unwrap();
        let (Ok(v), Ok(t), Ok(a)) = (
            weat_score(&sets, &space),
            weat_score(&sets.swapped_targets(), &space),
            weat_score(&sets.swapped_attributes(), &space),
        ) else {
            continue;
        };
        if (v + t).abs() > 1e-9 || (v + a).abs() > 1e-9 {
            anti_fail += 1;
        }
    }
    let flat = EmbeddingSpace::from_rows(
        0,
        [("p", vec![1.0, 1.0]), ("q", vec![1.0, 1.0]), ("a", vec![1.0, 0.0]), ("b", vec![0.0, 1.0])],
    )
    .unwrap();
    let degenerate = weat_score(&AssociationSets::new(["p"], ["q"], ["a"], ["b"]).unwrap(), &flat) == Err(Error::DegenerateSpread);
    outcome(
        hand_ok && anti_fail == 0 && degenerate,
        format!("hand fixture g/B match: {hand_ok}; antisymmetry failures {anti_fail}/1000; SD=0 error: {degenerate}"),
    )
}

// 7

const ATTRIBUTE_SHARE_B: [f64; 5] = [0.15, 0.25, 0.35, 0.75, 0.85];
const PLANTED_YEAR: i32 = 2013;
const POSITIVE: [&str; 4] = ["good", "honest", "efficient", "superior"];
const NEGATIVE: [&str; 4] = ["bad", "dishonest", "inefficient", "inferior"];
const POSITIVE_CONTEXT: [&str; 6] = ["praise", "trust", "growth", "reform", "hope", "progress"];
const NEGATIVE_CONTEXT: [&str; 6] = ["scandal", "fraud", "decline", "crisis", "anger", "failure"];
const FILLER: [&str; 24] = [
    "the", "a", "of", "in", "on", "for", "with", "today", "city", "state", "minister", "week", "report", "voters",
    "leaders", "plan", "policy", "budget", "village", "market", "rally", "court", "river", "school",
];

fn drift_corpus(rng: &mut ChaCha8Rng, share_b: f64, sentences: usize) -> Vec<Vec<String>> {
    let mut out = Vec::with_capacity(sentences * 3);
    let pick = |rng: &mut ChaCha8Rng, list: &[&str]| list.choose(rng).unwrap().to_string();
    let polar = |rng: &mut ChaCha8Rng, positive: bool, out: &mut Vec<String>| {
        let (attr, ctx) = if positive { (&POSITIVE, &POSITIVE_CONTEXT) } else { (&NEGATIVE, &NEGATIVE_CONTEXT) };
        out.push(pick(rng, attr.as_slice()));
        out.push(pick(rng, ctx.as_slice()));
        out.push(pick(rng, ctx.as_slice()));
    };
    for _ in 0..sentences {
        for (party, share) in [("bjp", share_b), ("congress", 1.0 - share_b)] {
            let mut s = vec![pick(rng, &FILLER), party.to_string()];
            let positive = rng.random_bool(share);
            polar(rng, positive, &mut s);
            s.push(pick(rng, &FILLER));
            out.push(s);
        }
        let mut s = vec![pick(rng, &FILLER)];
        let positive = rng.random_bool(0.5);
        polar(rng, positive, &mut s);
        s.push(pick(rng, &FILLER));
        s.push(pick(rng, &FILLER));
        out.push(s);
    }
    out
}

fn crossing_run(seed: u64) -> Vec<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = SgnsParams { dim: 20, window: 3, negatives: 5, epochs: 5, min_count: 1, sample: 0.0, seed, ..SgnsParams::default() };
    let spaces: Vec<EmbeddingSpace> = ATTRIBUTE_SHARE_B
        .iter()
        .enumerate()
        .map(|(i, &q)| {
            let year = 2010 + i as i32;
            let corpus = drift_corpus(&mut rng, q, 600);
            train_sgns(year, &corpus, &SgnsParams { seed: seed * 31 + i as u64, ..params }).unwrap()
        })
        .collect();
    let sets = AssociationSets::new(["bjp"], ["congress"], POSITIVE, NEGATIVE).unwrap();
    let opts = AlignOptions { anchors: 1000, ..AlignOptions::default() };
    popularity_timeline(&spaces, &sets, ["bjp", "congress"], &opts).unwrap().crossings()
}

fn planted_crossover() -> Outcome {
    let runs: Vec<Vec<i32>> = (0..100u64).into_par_iter().map(|s| crossing_run(700 + s)).collect();
    let hits = runs.iter().filter(|c| c.as_slice() == [PLANTED_YEAR]).count();
    outcome(hits >= 90, format!("single crossing in {PLANTED_YEAR} in {hits}/100 runs"))
}

// 8

const FLATTENING: [f64; 5] = [1.6, 1.3, 1.0, 0.7, 0.4];

fn geo_metrics() -> Outcome {
    let shares = |v: &[f64]| -> Vec<(String, f64)> { v.iter().enumerate().map(|(i, s)| (format!("p{i:02}"), *s)).collect() };
    let uniform4 = homogeneity_inverse_std(&[0.25; 4]).unwrap().is_none();
    let pair = homogeneity_inverse_std(&[0.75, 0.25]).unwrap() == Some(4.0);
    let u10 = shares(&[0.1; 10]);
    let uniform10 = (bottom_share(&view(&u10), 0.2).unwrap() - 20.0).abs() < 1e-12;
    let mut single = vec![0.0; 10];
    single[3] = 1.0;
    let s10 = shares(&single);
    let dominant = bottom_share(&view(&s10), 0.5).unwrap() == 0.0;
    let hand = shares(&[0.5, 0.3, 0.1, 0.06, 0.04]);
    let hand_ok = (bottom_share(&view(&hand), 0.2).unwrap() - 4.0).abs() < 1e-12;
    let fixtures = uniform4 && pair && uniform10 && dominant && hand_ok;

    // Place i of n receives round(1000 * (i+1)^-s / Z) single-mention articles.
    let gazetteer = Gazetteer::default();
    let places = &gazetteer.cities;
    let mut articles = Vec::new();
    let mut id = 0;
    for (y, s) in FLATTENING.iter().enumerate() {
        let weights: Vec<f64> = (0..places.len()).map(|i| ((i + 1) as f64).powf(-s)).collect();
        let z: f64 = weights.iter().sum();
        for (place, w) in places.places().iter().zip(&weights) {
            let count = (1000.0 * w / z).round() as usize;
            for k in 0..count {
                let date = NaiveDate::from_ymd_opt(2010 + y as i32, 1 + (k % 12) as u32, 1).unwrap();
                articles.push(article(id, "geo", date, "News", &format!("Officials visited {} today.", place.name)));
                id += 1;
            }
        }
    }
    let trends = yearly_geo_trends(&articles, places).unwrap();
    let b20: Vec<f64> = trends.iter().map(|t| t.bottom20).collect();
    let increasing = b20.len() == 5 && b20.windows(2).all(|w| w[1] > w[0]);
    outcome(
        fixtures && increasing,
        format!("fixtures exact: {fixtures}; bottom20 {:?} strictly increasing: {increasing}", b20.iter().map(|v| format!("{v:.2}")).collect::<Vec<_>>()),
    )
}

fn view(v: &[(String, f64)]) -> Vec<(&str, f64)> {
    v.iter().map(|(n, s)| (n.as_str(), *s)).collect()
}

// 9

fn probe_arithmetic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut sum_fail = 0;
    for _ in 0..10_000 {
        let (vb, vc): (f64, f64) = (rng.random_range(0.0..1.0), rng.random_range(1e-9..1.0));
        let p = popularity_from_votes(vb, vc).unwrap();
        if p.b + p.c != 1.0 {
            sum_fail += 1;
        }
    }

    let mut sentences: Vec<Vec<String>> = Vec::new();
    for i in 0..200 {
        let party = if i % 5 == 0 { "Congress" } else { "BJP" };
        sentences.push(["This", "election", "people", "will", "vote", "for", party, "."].map(String::from).to_vec());
        sentences.push(["The", "rally", "was", "large", "."].map(String::from).to_vec());
    }
    let ngram = NgramBackend::trigram("skewed", &sentences).unwrap();
    let r = probe(&ngram, VOTE_PROMPT, None).unwrap();
    let direction = r.probability("BJP") > r.probability("Congress")
        && popularity_from_votes(r.probability("BJP"), r.probability("Congress")).unwrap().b > 0.5;

    let early = FixedBackend::new("early", [("a", 0.5), ("b", 0.25), ("c", 0.125), ("d", 0.0625), ("e", 0.0625)]);
    let late = FixedBackend::new("late", [("a", 0.125), ("b", 0.25), ("c", 0.5), ("d", 0.0), ("e", 0.125)]);
    let ranking = token_delta_ranking(&early, &late, VOTE_PROMPT, 5, 2).unwrap();
    // Deltas: a -0.375, b 0, c +0.375, d -0.0625, e +0.0625.
    let rising: Vec<(&str, f64)> = ranking.rising.iter().map(|t| (t.token.as_str(), t.delta)).collect();
    let falling: Vec<(&str, f64)> = ranking.falling.iter().map(|t| (t.token.as_str(), t.delta)).collect();
    let hand = rising == [("c", 0.375), ("e", 0.0625)] && falling == [("a", -0.375), ("d", -0.0625)];
    outcome(
        sum_fail == 0 && direction && hand,
        format!("complement failures {sum_fail}/10000; n-gram direction recovered: {direction}; delta ranking matches hand oracle: {hand}"),
    )
}

// 10

fn run_report(dir: &Path, out: &Path) -> BTreeMap<String, Vec<u8>> {
    let config = LoadedConfig::from_file(&dir.join("config.toml")).unwrap();
    let run = Run::from_config(config, Some(out), None).unwrap();
    let mut files = BTreeMap::new();
    for p in run.report().unwrap() {
        let mut bytes = std::fs::read(&p).unwrap();
        if p.file_name().is_some_and(|n| n == "report.json") {
            let mut v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
            v["provenance"].as_object_mut().unwrap().remove("generated_at");
            bytes = serde_json::to_vec(&v).unwrap();
        }
        files.insert(p.strip_prefix(out).unwrap().display().to_string(), bytes);
    }
    files
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let options = SynthOptions::default();
    write_corpus(&tmp.path().join("corpus"), &generate(&options)).unwrap();
    std::fs::write(tmp.path().join("config.toml"), sample_config("corpus", options.seed)).unwrap();
    let started = Instant::now();
    let first = run_report(tmp.path(), &tmp.path().join("out1"));
    let elapsed = started.elapsed();
    let second = run_report(tmp.path(), &tmp.path().join("out2"));
    let identical = first == second;
    let ok = identical && elapsed < Duration::from_secs(300) && first.contains_key("report.json");
    outcome(ok, format!("{} artifacts identical across runs: {identical}; one run took {elapsed:.2?}", first.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("imbalance algebra", imbalance_algebra),
        ("planted coverage recovery", planted_coverage),
        ("DTW oracle equivalence", dtw_oracle),
        ("clustering fidelity", clustering_fidelity),
        ("Procrustes recovery", procrustes_recovery),
        ("WEAT correctness", weat_correctness),
        ("planted popularity crossover", planted_crossover),
        ("geo metrics", geo_metrics),
        ("probe arithmetic", probe_arithmetic),
        ("end-to-end determinism", determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let o = f();
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {name}: {}", i + 1, o.detail);
        if !o.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
