use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use inkspace_core::corpus::Article;
use inkspace_core::geo::{count_mentions, yearly_geo_trends, CoverageDistribution, Gazetteer, GeoTrendPoint, PlaceSet};
use serde::Serialize;

use crate::error::AppResult;
use crate::io::{cell, write_csv};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutletShares {
    pub year: i32,
    pub outlet: String,
    pub distribution: CoverageDistribution,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelOutput {
    pub level: String,
    /// Shares per year and outlet.
    pub shares: Vec<OutletShares>,
    pub trends: Vec<GeoTrendPoint>,
}

fn level(name: &str, articles: &[Article], places: &PlaceSet) -> AppResult<LevelOutput> {
    let mut buckets: BTreeMap<(i32, &str), Vec<&Article>> = BTreeMap::new();
    for a in articles {
        buckets.entry((a.year(), a.outlet.as_str())).or_default().push(a);
    }
    let shares = buckets
        .into_iter()
        .map(|((year, outlet), arts)| OutletShares {
            year,
            outlet: outlet.to_string(),
            distribution: CoverageDistribution::from_counts(count_mentions(arts, places)),
        })
        .collect();
    Ok(LevelOutput { level: name.to_string(), shares, trends: yearly_geo_trends(articles, places)? })
}

pub fn compute(articles: &[Article], gazetteer: &Gazetteer) -> AppResult<Vec<LevelOutput>> {
    Ok(vec![level("cities", articles, &gazetteer.cities)?, level("states", articles, &gazetteer.states)?])
}

pub fn write(out: &[LevelOutput], dir: &Path) -> AppResult<Vec<PathBuf>> {
    let dir = dir.join("geo");
    let mut paths = Vec::new();
    for l in out {
        let p = dir.join(format!("{}_shares.csv", l.level));
        let rows = l.shares.iter().flat_map(|o| {
            o.distribution
                .places
                .iter()
                .map(|s| vec![o.year.to_string(), o.outlet.clone(), s.place.clone(), s.count.to_string(), s.share.to_string()])
        });
        write_csv(&p, &["year", "outlet", "place", "count", "share"], rows)?;
        paths.push(p);

        let p = dir.join(format!("{}_trends.csv", l.level));
        let rows = l.trends.iter().map(|t| {
            vec![
                t.outlet.clone(),
                t.year.to_string(),
                t.total_mentions.to_string(),
                cell(t.inverse_std),
                t.bottom20.to_string(),
                t.bottom50.to_string(),
            ]
        });
        write_csv(&p, &["outlet", "year", "total_mentions", "inverse_std", "bottom20", "bottom50"], rows)?;
        paths.push(p);
    }
    Ok(paths)
}
