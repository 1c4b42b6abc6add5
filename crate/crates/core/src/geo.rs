//! Place-name mention counting and the spread of coverage across places.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::corpus::{tokenize, Article};
use crate::math::{floor, population_std};
use crate::tagging::MatchView;
use crate::{Error, Result};

const DEFAULT_CITIES: &str = include_str!("../data/cities.txt");
const DEFAULT_STATES: &str = include_str!("../data/states.txt");

/// A place with its canonical name and alternative spellings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Place {
    pub name: String,
    pub aliases: Vec<String>,
}

/// Places of one level (cities or states), compiled for matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceSet {
    places: Vec<Place>,
    /// Lowercased token sequences per place, canonical name first.
    patterns: Vec<Vec<Vec<String>>>,
}

fn pattern(name: &str) -> Vec<String> {
    let toks = tokenize(name);
    let view = MatchView::new(&toks);
    (0..view.len()).map(|i| view.lower(i).to_string()).collect()
}

impl PlaceSet {
    pub fn new(places: Vec<Place>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut patterns = Vec::with_capacity(places.len());
        for p in &places {
            let mut forms = Vec::new();
            for name in core::iter::once(&p.name).chain(&p.aliases) {
                let pat = pattern(name);
                if pat.is_empty() {
                    return Err(Error::InvalidLexicon(alloc::format!("place name {name:?} has no tokens")));
                }
                if !seen.insert(pat.clone()) {
                    return Err(Error::InvalidLexicon(alloc::format!("place name {name:?} is listed twice")));
                }
                forms.push(pat);
            }
            patterns.push(forms);
        }
        Ok(PlaceSet { places, patterns })
    }

    /// Parses one place per line: `Canonical, Alias, Alias`. `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut places = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut names = line.split(',').map(str::trim);
            let name = names.next().unwrap_or_default().to_string();
            let aliases: Vec<String> = names.map(str::to_string).collect();
            if name.is_empty() || aliases.iter().any(String::is_empty) {
                return Err(Error::Parse { line: n + 1, message: "empty place name".into() });
            }
            places.push(Place { name, aliases });
        }
        Self::new(places)
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    /// Indices of the places mentioned anywhere in `text`.
    pub fn mentioned(&self, text: &str) -> BTreeSet<usize> {
        let toks = tokenize(text);
        let view = MatchView::new(&toks);
        let mut found = BTreeSet::new();
        for (idx, forms) in self.patterns.iter().enumerate() {
            let hit = forms.iter().any(|pat| {
                (0..view.len().saturating_sub(pat.len() - 1))
                    .any(|at| pat.iter().enumerate().all(|(k, t)| view.lower(at + k) == t))
            });
            if hit {
                found.insert(idx);
            }
        }
        found
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gazetteer {
    pub cities: PlaceSet,
    pub states: PlaceSet,
}

impl Default for Gazetteer {
    /// The 25 most populous cities and all states and union territories of the 2011 census.
    fn default() -> Self {
        Gazetteer {
            cities: PlaceSet::parse(DEFAULT_CITIES).expect("bundled city list is valid"),
            states: PlaceSet::parse(DEFAULT_STATES).expect("bundled state list is valid"),
        }
    }
}

/// Number of articles mentioning each place, in gazetteer order.
///
/// An article counts once per place however often the place appears in its
/// headline and content.
pub fn count_mentions<'a>(articles: impl IntoIterator<Item = &'a Article>, places: &PlaceSet) -> Vec<(String, u64)> {
    let mut counts = alloc::vec![0u64; places.len()];
    for a in articles {
        let mut found = places.mentioned(&a.headline);
        found.extend(places.mentioned(&a.content));
        for i in found {
            counts[i] += 1;
        }
    }
    places.places.iter().map(|p| p.name.clone()).zip(counts).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaceShare {
    pub place: String,
    pub count: u64,
    pub share: f64,
}

/// Counts and shares over every place, including those never mentioned.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageDistribution {
    pub places: Vec<PlaceShare>,
}

impl CoverageDistribution {
    pub fn from_counts(counts: Vec<(String, u64)>) -> Self {
        let total: u64 = counts.iter().map(|c| c.1).sum();
        let places = counts
            .into_iter()
            .map(|(place, count)| {
                let share = if total == 0 { 0.0 } else { count as f64 / total as f64 };
                PlaceShare { place, count, share }
            })
            .collect();
        CoverageDistribution { places }
    }

    pub fn total(&self) -> u64 {
        self.places.iter().map(|p| p.count).sum()
    }

    pub fn shares(&self) -> Vec<(&str, f64)> {
        self.places.iter().map(|p| (p.place.as_str(), p.share)).collect()
    }
}

/// `1 / σ` of the shares; `None` when the distribution is flat.
pub fn homogeneity_inverse_std(shares: &[f64]) -> Result<Option<f64>> {
    if shares.len() < 2 {
        return Err(Error::TooFewPlaces(shares.len()));
    }
    let sd = population_std(shares).unwrap_or(0.0);
    Ok((sd >= 1e-12).then(|| 1.0 / sd))
}

/// Percentage of coverage held by the `floor(fraction · n)` least-covered places.
///
/// Equal shares are ordered by place name.
pub fn bottom_share(shares: &[(&str, f64)], fraction: f64) -> Result<f64> {
    if shares.is_empty() {
        return Err(Error::TooFewPlaces(0));
    }
    if !(0.0..=1.0).contains(&fraction) {
        return Err(Error::InvalidArgument(alloc::format!("fraction {fraction} outside [0, 1]")));
    }
    let mut sorted: Vec<(&str, f64)> = shares.to_vec();
    sorted.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(b.0)));
    let k = floor(fraction * sorted.len() as f64 + 1e-9) as usize;
    Ok(100.0 * sorted[..k.min(sorted.len())].iter().map(|s| s.1).sum::<f64>())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeoTrendPoint {
    pub outlet: String,
    pub year: i32,
    pub total_mentions: u64,
    pub inverse_std: Option<f64>,
    pub bottom20: f64,
    pub bottom50: f64,
}

/// Per outlet and year, the three homogeneity measures of place coverage.
/// Years without any mention are left out.
pub fn yearly_geo_trends<'a>(
    articles: impl IntoIterator<Item = &'a Article>,
    places: &PlaceSet,
) -> Result<Vec<GeoTrendPoint>> {
    let mut buckets: BTreeMap<(String, i32), Vec<&Article>> = BTreeMap::new();
    for a in articles {
        buckets.entry((a.outlet.clone(), a.year())).or_default().push(a);
    }
    let mut out = Vec::new();
    for ((outlet, year), arts) in buckets {
        let dist = CoverageDistribution::from_counts(count_mentions(arts, places));
        let total = dist.total();
        if total == 0 {
            continue;
        }
        let shares = dist.shares();
        let values: Vec<f64> = shares.iter().map(|s| s.1).collect();
        out.push(GeoTrendPoint {
            outlet,
            year,
            total_mentions: total,
            inverse_std: homogeneity_inverse_std(&values)?,
            bottom20: bottom_share(&shares, 0.2)?,
            bottom50: bottom_share(&shares, 0.5)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;
    use proptest::prelude::*;

    fn article(id: &str, year: i32, content: &str) -> Article {
        Article::from_parts(id, "daily", &format!("{year}-03-01"), "", content).unwrap()
    }

    #[test]
    fn bundled_gazetteer() {
        let g = Gazetteer::default();
        assert_eq!(g.cities.len(), 25);
        assert_eq!(g.states.len(), 35);
    }

    #[test]
    fn counts_once_per_article() {
        let g = Gazetteer::default();
        let a = [article("1", 2012, "Delhi Delhi Delhi. Delhi and delhi.")];
        let c = count_mentions(&a, &g.cities);
        assert_eq!(c.iter().find(|c| c.0 == "Delhi").unwrap().1, 1);
        let a = [article("1", 2012, "From Delhi to Mumbai."), article("2", 2012, "Bombay rains")];
        let c = count_mentions(&a, &g.cities);
        assert_eq!(c.iter().find(|c| c.0 == "Delhi").unwrap().1, 1);
        assert_eq!(c.iter().find(|c| c.0 == "Mumbai").unwrap().1, 2);
    }

    #[test]
    fn aliases_fold() {
        let g = Gazetteer::default();
        let a = [article("1", 2012, "Floods hit Odisha."), article("2", 2012, "Orissa and Odisha")];
        let c = count_mentions(&a, &g.states);
        assert_eq!(c.iter().find(|c| c.0 == "Odisha").unwrap().1, 2);
        let a = [article("1", 2012, "Polls in Jammu & Kashmir")];
        assert_eq!(count_mentions(&a, &g.states).iter().find(|c| c.0 == "Jammu and Kashmir").unwrap().1, 1);
    }

    #[test]
    fn whole_tokens_only() {
        let set = PlaceSet::parse("Goa\nPune").unwrap();
        assert!(set.mentioned("Goan cuisine and Punekar").is_empty());
        assert_eq!(set.mentioned("Goa-bound flight").len(), 1);
        let a = Article::from_parts("1", "x", "2012-01-01", "Pune", "Nothing here").unwrap();
        assert_eq!(count_mentions([&a], &set)[1].1, 1);
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(PlaceSet::parse("Orissa\nOdisha, orissa").is_err());
        assert!(matches!(PlaceSet::parse("A,\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn inverse_std_examples() {
        assert_eq!(homogeneity_inverse_std(&[0.25; 4]).unwrap(), None);
        assert!((homogeneity_inverse_std(&[0.75, 0.25]).unwrap().unwrap() - 4.0).abs() < 1e-12);
        let flat = homogeneity_inverse_std(&[0.3, 0.3, 0.2, 0.2]).unwrap().unwrap();
        let steep = homogeneity_inverse_std(&[0.4, 0.4, 0.1, 0.1]).unwrap().unwrap();
        assert!(flat > steep);
        assert_eq!(homogeneity_inverse_std(&[1.0]), Err(Error::TooFewPlaces(1)));
    }

    #[test]
    fn bottom_share_examples() {
        let names: Vec<String> = (0..10).map(|i| format!("p{i}")).collect();
        let uniform: Vec<(&str, f64)> = names.iter().map(|n| (n.as_str(), 0.1)).collect();
        assert!((bottom_share(&uniform, 0.2).unwrap() - 20.0).abs() < 1e-12);
        let mut dominant: Vec<(&str, f64)> = names.iter().map(|n| (n.as_str(), 0.0)).collect();
        dominant[3].1 = 1.0;
        assert_eq!(bottom_share(&dominant, 0.5).unwrap(), 0.0);
        let hand = [("a", 0.5), ("b", 0.3), ("c", 0.1), ("d", 0.06), ("e", 0.04)];
        assert!((bottom_share(&hand, 0.2).unwrap() - 4.0).abs() < 1e-12);
        assert!((bottom_share(&hand, 1.0).unwrap() - 100.0).abs() < 1e-12);
    }

    #[test]
    fn trends_skip_empty_years() {
        let set = PlaceSet::parse("Goa\nPune\nAgra").unwrap();
        let arts = [article("1", 2010, "Goa"), article("2", 2011, "nothing"), article("3", 2012, "Pune and Goa")];
        let t = yearly_geo_trends(&arts, &set).unwrap();
        assert_eq!(t.iter().map(|p| p.year).collect::<Vec<_>>(), [2010, 2012]);
        let single = yearly_geo_trends(&arts[..1], &set).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].bottom50, 0.0);
    }

    proptest! {
        #[test]
        fn shares_sum_to_one(counts in prop::collection::vec(0u64..50, 2..12)) {
            let d = CoverageDistribution::from_counts(counts.iter().enumerate().map(|(i, c)| (format!("p{i}"), *c)).collect());
            let sum: f64 = d.places.iter().map(|p| p.share).sum();
            if d.total() > 0 {
                prop_assert!((sum - 1.0).abs() < 1e-9);
                prop_assert!((bottom_share(&d.shares(), 1.0).unwrap() - 100.0).abs() < 1e-9);
            }
        }

        #[test]
        fn bottom_share_monotone_in_fraction(counts in prop::collection::vec(0u64..50, 1..12), f1 in 0.0f64..1.0, f2 in 0.0f64..1.0) {
            let d = CoverageDistribution::from_counts(counts.iter().enumerate().map(|(i, c)| (format!("p{i}"), *c)).collect());
            let (lo, hi) = if f1 <= f2 { (f1, f2) } else { (f2, f1) };
            prop_assert!(bottom_share(&d.shares(), lo).unwrap() <= bottom_share(&d.shares(), hi).unwrap() + 1e-12);
        }

        #[test]
        fn order_independent_and_idempotent(picks in prop::collection::vec(prop::collection::vec(0usize..4, 0..6), 0..8)) {
            let names = ["Goa", "Pune", "Agra", "Surat"];
            let set = PlaceSet::parse(&names.join("\n")).unwrap();
            let arts: Vec<Article> = picks.iter().enumerate().map(|(i, p)| {
                let text: Vec<&str> = p.iter().map(|&k| names[k]).collect();
                article(&format!("{i}"), 2012, &text.join(" "))
            }).collect();
            let forward = count_mentions(&arts, &set);
            prop_assert_eq!(&forward, &count_mentions(arts.iter().rev(), &set));
            let doubled: Vec<Article> = arts.iter().map(|a| Article { content: format!("{} {}", a.content, a.content), ..a.clone() }).collect();
            prop_assert_eq!(&forward, &count_mentions(&doubled, &set));
        }
    }

    #[test]
    fn empty_total_has_zero_shares() {
        let d = CoverageDistribution::from_counts(vec![("a".into(), 0), ("b".into(), 0)]);
        assert_eq!(d.shares(), [("a", 0.0), ("b", 0.0)]);
    }
}
