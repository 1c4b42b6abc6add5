//! Seeded synthetic news corpus with planted signals.
//!
//! Three outlets report on two parties. `ledger` and `courier` draw their
//! coverage and tone from one shared monthly trajectory; `tribune` follows an
//! independent random walk. Attribute words drift from party C to party B so
//! that their association crosses in the fourth year, the vote sentence swings
//! toward party B, and place mentions spread more evenly every year.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use chrono::NaiveDate;
use inkspace_core::corpus::Article;
use inkspace_core::geo::Gazetteer;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::AppResult;
use crate::io::write_jsonl;

#[derive(Debug, Clone)]
pub struct SynthOptions {
    pub seed: u64,
    pub start_year: i32,
    pub years: usize,
    pub articles_per_month: usize,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions { seed: 2014, start_year: 2010, years: 5, articles_per_month: 28 }
    }
}

pub const OUTLETS: [&str; 3] = ["courier", "ledger", "tribune"];

const B_NAMES: [&str; 2] = ["BJP", "NDA"];
const C_NAMES: [&str; 2] = ["Congress", "UPA"];
const POSITIVE_ATTR: [&str; 4] = ["good", "honest", "efficient", "superior"];
const NEGATIVE_ATTR: [&str; 4] = ["bad", "dishonest", "inefficient", "inferior"];
const POSITIVE_CONTEXT: [&str; 6] = ["development", "growth", "welfare", "reform", "progress", "stability"];
const NEGATIVE_CONTEXT: [&str; 6] = ["scandal", "corruption", "delays", "failure", "unrest", "neglect"];
const PRAISE: [&str; 8] = ["excellent", "strong", "successful", "popular", "impressive", "brilliant", "hopeful", "fair"];
const BLAME: [&str; 8] = ["weak", "poor", "troubled", "disappointing", "failed", "controversial", "corrupt", "unfair"];
const DEGREE: [&str; 6] = ["biggest", "largest", "stronger", "bigger", "greatest", "wider"];
const TOPICS: [&str; 12] = [
    "budget", "railway plan", "farm policy", "health scheme", "water project", "school programme", "tax reform",
    "housing mission", "power grid", "port project", "trade pact", "job scheme",
];
const HEADLINE_VERBS: [&str; 8] =
    ["unveils", "defends", "questions", "debates", "backs", "revisits", "announces", "reviews"];
const NOUNS: [&str; 16] = [
    "meeting", "committee", "council", "report", "survey", "crowd", "panel", "market", "village", "district",
    "factory", "hospital", "court", "bridge", "highway", "festival",
];
const VERBS: [&str; 10] =
    ["opened", "closed", "reviewed", "approved", "delayed", "visited", "inspected", "discussed", "funded", "planned"];
const PEOPLE: [&str; 8] = ["Mehta", "Rao", "Iyer", "Sharma", "Das", "Khan", "Nair", "Singh"];
const DAYS: [&str; 7] = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"];

/// Per-year probability that a party's attribute sentence is positive.
const ATTRIBUTE_B: [f64; 5] = [0.15, 0.25, 0.35, 0.75, 0.85];
/// Per-year probability that a vote sentence names party B.
const VOTE_B: [f64; 5] = [0.3, 0.4, 0.5, 0.6, 0.75];
/// Per-year Zipf exponent of place mentions; smaller means flatter.
const PLACE_EXPONENT: [f64; 5] = [1.6, 1.3, 1.0, 0.7, 0.4];

fn year_value(table: &[f64; 5], year_index: usize) -> f64 {
    table[year_index.min(table.len() - 1)]
}

struct Trajectory {
    coverage_b: Vec<f64>,
    tone_b: Vec<f64>,
}

fn shared_trajectory(months: usize) -> Trajectory {
    Trajectory {
        coverage_b: (0..months).map(|m| 0.5 + 0.3 * (2.0 * PI * m as f64 / 20.0).sin()).collect(),
        tone_b: (0..months).map(|m| 0.5 + 0.3 * (2.0 * PI * m as f64 / 30.0).cos()).collect(),
    }
}

fn walk(rng: &mut ChaCha8Rng, months: usize) -> Vec<f64> {
    let mut v = 0.5;
    (0..months)
        .map(|_| {
            v = (v + rng.random_range(-0.12..0.12f64)).clamp(0.15, 0.85);
            v
        })
        .collect()
}

fn place_weights(n: usize, exponent: f64) -> WeightedIndex<f64> {
    WeightedIndex::new((0..n).map(|i| ((i + 1) as f64).powf(-exponent))).expect("positive weights")
}

fn pick<'a>(rng: &mut ChaCha8Rng, items: &[&'a str]) -> &'a str {
    items.choose(rng).copied().expect("non-empty list")
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    c.next().map(|f| f.to_uppercase().chain(c).collect()).unwrap_or_default()
}

struct ArticleDraft<'a> {
    rng: &'a mut ChaCha8Rng,
    year_index: usize,
    favours_b: bool,
    tone_b: f64,
    state: &'a str,
    city: &'a str,
}

impl ArticleDraft<'_> {
    fn party_name(&mut self, b: bool) -> &'static str {
        let names = if b { &B_NAMES } else { &C_NAMES };
        if self.rng.random_bool(0.8) {
            names[0]
        } else {
            names[1]
        }
    }

    fn headline(&mut self) -> String {
        let p = self.party_name(self.favours_b);
        let verb = pick(self.rng, &HEADLINE_VERBS);
        let topic = pick(self.rng, &TOPICS);
        format!("{p} {verb} {topic} in {}", self.city)
    }

    fn content(&mut self) -> String {
        let b = self.favours_b;
        let mut out = Vec::new();
        let p = self.party_name(b);
        let tone = if b { self.tone_b } else { 1.0 - self.tone_b };
        let adj = if self.rng.random_bool(tone) { pick(self.rng, &PRAISE) } else { pick(self.rng, &BLAME) };
        let topic = pick(self.rng, &TOPICS);
        out.push(format!("{p} leaders said the {topic} was {adj}."));

        let noun = pick(self.rng, &NOUNS);
        let degree = if self.rng.random_bool(if b { 0.6 } else { 0.3 }) {
            format!("{} ", pick(self.rng, &DEGREE))
        } else {
            String::new()
        };
        out.push(format!("The {degree}{noun} in {} heard the {p} pitch on {}.", self.state, pick(self.rng, &DAYS)));

        let attr_p = year_value(&ATTRIBUTE_B, self.year_index);
        let positive = self.rng.random_bool(if b { attr_p } else { 1.0 - attr_p });
        let (attrs, ctx) = if positive { (&POSITIVE_ATTR, &POSITIVE_CONTEXT) } else { (&NEGATIVE_ATTR, &NEGATIVE_CONTEXT) };
        out.push(format!(
            "Observers call the {p} {} on {} and {}.",
            pick(self.rng, attrs),
            pick(self.rng, ctx),
            pick(self.rng, ctx)
        ));

        let (attrs, ctx) = if self.rng.random_bool(0.5) {
            (&POSITIVE_ATTR, &POSITIVE_CONTEXT)
        } else {
            (&NEGATIVE_ATTR, &NEGATIVE_CONTEXT)
        };
        out.push(format!(
            "{} work on {} means {} {}.",
            capitalize(pick(self.rng, attrs)),
            pick(self.rng, ctx),
            pick(self.rng, ctx),
            pick(self.rng, ctx)
        ));

        if self.rng.random_bool(0.35) {
            let vote_b = self.rng.random_bool(year_value(&VOTE_B, self.year_index));
            out.push(format!("Many people will vote for {}.", if vote_b { B_NAMES[0] } else { C_NAMES[0] }));
        }
        out.push(format!(
            "{} reported that the {} {} the {} on {}.",
            pick(self.rng, &PEOPLE),
            pick(self.rng, &NOUNS),
            pick(self.rng, &VERBS),
            pick(self.rng, &NOUNS),
            pick(self.rng, &DAYS)
        ));
        if self.rng.random_bool(0.1) {
            out.push(format!("{} and {} traded barbs in {}.", B_NAMES[0], C_NAMES[0], self.city));
        }
        out.join(" ")
    }
}

/// Generates the corpus, ordered by outlet, then date, then id.
pub fn generate(options: &SynthOptions) -> Vec<Article> {
    let months = options.years * 12;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let shared = shared_trajectory(months);
    let gazetteer = Gazetteer::default();
    let states: Vec<&str> = gazetteer.states.places().iter().map(|p| p.name.as_str()).collect();
    let cities: Vec<&str> = gazetteer.cities.places().iter().map(|p| p.name.as_str()).collect();

    let mut trajectories = BTreeMap::new();
    for outlet in OUTLETS {
        let t = if outlet == "tribune" {
            Trajectory { coverage_b: walk(&mut rng, months), tone_b: walk(&mut rng, months) }
        } else {
            let jitter = |v: &[f64], rng: &mut ChaCha8Rng| -> Vec<f64> {
                v.iter().map(|x| (x + rng.random_range(-0.04..0.04)).clamp(0.05, 0.95)).collect()
            };
            Trajectory { coverage_b: jitter(&shared.coverage_b, &mut rng), tone_b: jitter(&shared.tone_b, &mut rng) }
        };
        trajectories.insert(outlet, t);
    }

    let mut articles = Vec::with_capacity(OUTLETS.len() * months * options.articles_per_month);
    for outlet in OUTLETS {
        let traj = &trajectories[outlet];
        for m in 0..months {
            let year_index = m / 12;
            let year = options.start_year + year_index as i32;
            let month = (m % 12) as u32 + 1;
            let exponent = year_value(&PLACE_EXPONENT, year_index);
            let state_dist = place_weights(states.len(), exponent);
            let city_dist = place_weights(cities.len(), exponent);
            let mut batch = Vec::with_capacity(options.articles_per_month);
            for n in 0..options.articles_per_month {
                let day = rng.random_range(1..=28);
                let favours_b = rng.random_bool(traj.coverage_b[m]);
                let state = states[state_dist.sample(&mut rng)];
                let city = cities[city_dist.sample(&mut rng)];
                let mut draft =
                    ArticleDraft { rng: &mut rng, year_index, favours_b, tone_b: traj.tone_b[m], state, city };
                let headline = draft.headline();
                let content = draft.content();
                batch.push(Article {
                    id: format!("{outlet}-{year}{month:02}-{n:03}"),
                    outlet: outlet.to_string(),
                    published: NaiveDate::from_ymd_opt(year, month, day).expect("valid day"),
                    headline,
                    content,
                });
            }
            batch.sort_by(|a, b| (a.published, &a.id).cmp(&(b.published, &b.id)));
            articles.extend(batch);
        }
    }
    articles
}

#[derive(serde::Serialize)]
struct Record<'a> {
    id: &'a str,
    outlet: &'a str,
    published: String,
    headline: &'a str,
    content: &'a str,
}

/// Writes one `<outlet>.jsonl` file per outlet into `dir`.
pub fn write_corpus(dir: &Path, articles: &[Article]) -> AppResult<Vec<std::path::PathBuf>> {
    let mut by_outlet: BTreeMap<&str, Vec<Record>> = BTreeMap::new();
    for a in articles {
        by_outlet.entry(&a.outlet).or_default().push(Record {
            id: &a.id,
            outlet: &a.outlet,
            published: a.published.format("%Y-%m-%d").to_string(),
            headline: &a.headline,
            content: &a.content,
        });
    }
    let mut paths = Vec::new();
    for (outlet, rows) in by_outlet {
        let path = dir.join(format!("{outlet}.jsonl"));
        write_jsonl(&path, &rows)?;
        paths.push(path);
    }
    Ok(paths)
}

/// A run config for a corpus written by [`write_corpus`] into `corpus_dir`,
/// with paths relative to the config's directory.
pub fn sample_config(corpus_dir: &str, seed: u64) -> String {
    let outlets: Vec<String> = OUTLETS.iter().map(|o| format!("{o} = \"{corpus_dir}/{o}.jsonl\"")).collect();
    format!(
        "seed = {seed}\noutput_dir = \"out\"\n\n[corpus]\noutlets = {{ {} }}\n\n[embeddings]\ndim = 50\nwindow = 5\nepochs = 5\nmin_count = 3\nsample = 0.0\n\n[probe]\ntop_k = 50\nmax_listed = 15\n",
        outlets.join(", ")
    )
}
