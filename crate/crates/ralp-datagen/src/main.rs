//! Regenerates the bundled datasets under `data/`.
//!
//! The countries benchmark is rebuilt from the static table in
//! `countries.rs`: three difficulty tiers (S1/S2/S3) that drop
//! progressively more `locatedin` triples for the held-out countries.
//! The family ABox and concept list for instance retrieval come from
//! `family.rs`. Output is deterministic for a fixed seed.

mod countries;
mod family;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use countries::{Country, COUNTRIES};

const EVAL_SEED: u64 = 2015;
const N_VALID: usize = 24;
const N_TEST: usize = 24;

fn main() -> Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("data"));

    let table = CountryTable::build()?;
    for tier in [Tier::S1, Tier::S2, Tier::S3] {
        let dir = out.join("countries").join(tier.name());
        fs::create_dir_all(&dir)?;
        let splits = table.splits(tier);
        write_lines(&dir.join("train.txt"), &splits.train)?;
        write_lines(&dir.join("valid.txt"), &splits.valid)?;
        write_lines(&dir.join("test.txt"), &splits.test)?;
        println!(
            "countries/{}: train={} valid={} test={}",
            tier.name(),
            splits.train.len(),
            splits.valid.len(),
            splits.test.len()
        );
    }

    let family_dir = out.join("family");
    fs::create_dir_all(&family_dir)?;
    write_lines(&family_dir.join("abox.txt"), &family::abox_lines())?;
    let concepts: Vec<String> = family::concept_lines().iter().map(|s| s.to_string()).collect();
    write_lines(&family_dir.join("concepts.txt"), &concepts)?;
    println!("family: abox + concepts written");

    let litkg_dir = out.join("litkg");
    fs::create_dir_all(&litkg_dir)?;
    let literals = synthetic_literals();
    write_lines(&litkg_dir.join("numeric_literals.txt"), &literals)?;
    println!("litkg: {} synthetic literal triples written", literals.len());
    Ok(())
}

/// Synthetic numeric literals over the country entities, for offline
/// demos of the numeric pipeline. Values are seeded pseudo-random draws
/// from plausible per-property ranges, not real statistics.
fn synthetic_literals() -> Vec<String> {
    use rand::Rng;
    let properties: [(&str, f64, f64, bool); 8] = [
        ("population", 1.0e5, 1.4e9, true),
        ("area_km2", 2.0e2, 1.7e7, true),
        ("gdp_per_capita_usd", 5.0e2, 1.2e5, true),
        ("life_expectancy_years", 52.0, 85.0, false),
        ("median_age_years", 15.0, 48.0, false),
        ("fertility_rate", 1.1, 6.8, false),
        ("human_development_index", 0.39, 0.96, false),
        ("inflation_rate_percent", -1.5, 22.0, false),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let mut lines = Vec::new();
    for c in COUNTRIES {
        for (property, lo, hi, log_scale) in properties {
            // every country gets most properties; skip some at random so
            // subjects differ in coverage
            if rng.random_bool(0.15) {
                continue;
            }
            let value = if log_scale {
                let (llo, lhi) = (lo.ln(), hi.ln());
                (rng.random_range(llo..lhi)).exp().round()
            } else {
                (rng.random_range(lo..hi) * 100.0).round() / 100.0
            };
            lines.push(format!("{}\t{}\t{}", c.name, property, value));
        }
    }
    lines
}

fn write_lines<S: AsRef<str>>(path: &Path, lines: &[S]) -> Result<()> {
    let mut text = String::new();
    for line in lines {
        text.push_str(line.as_ref());
        text.push('\n');
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tier {
    S1,
    S2,
    S3,
}

impl Tier {
    fn name(self) -> &'static str {
        match self {
            Tier::S1 => "S1",
            Tier::S2 => "S2",
            Tier::S3 => "S3",
        }
    }
}

struct Splits {
    train: Vec<String>,
    valid: Vec<String>,
    test: Vec<String>,
}

struct CountryTable {
    by_name: BTreeMap<&'static str, &'static Country>,
    /// Undirected, symmetrized border pairs.
    borders: BTreeSet<(&'static str, &'static str)>,
    eval_valid: Vec<&'static str>,
    eval_test: Vec<&'static str>,
}

impl CountryTable {
    fn build() -> Result<Self> {
        let mut by_name = BTreeMap::new();
        for c in COUNTRIES {
            if by_name.insert(c.name, c).is_some() {
                bail!("duplicate country `{}`", c.name);
            }
        }
        let mut borders = BTreeSet::new();
        for c in COUNTRIES {
            for b in c.borders {
                if !by_name.contains_key(b) {
                    bail!("border `{}` of `{}` is not in the table", b, c.name);
                }
                let pair = if c.name < *b { (c.name, *b) } else { (*b, c.name) };
                borders.insert(pair);
            }
        }

        // Held-out countries: must have at least one neighbor and share
        // their subregion with at least one other country, so the region
        // stays inferable after the removals.
        let neighbor_count = |name: &str| {
            borders
                .iter()
                .filter(|(a, b)| *a == name || *b == name)
                .count()
        };
        let mut candidates: Vec<&'static str> = COUNTRIES
            .iter()
            .filter(|c| neighbor_count(c.name) >= 1)
            .filter(|c| {
                COUNTRIES
                    .iter()
                    .any(|o| o.name != c.name && o.subregion == c.subregion)
            })
            .map(|c| c.name)
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(EVAL_SEED);
        candidates.shuffle(&mut rng);
        if candidates.len() < N_VALID + N_TEST {
            bail!("not enough eval candidates");
        }
        let eval_valid = candidates[..N_VALID].to_vec();
        let eval_test = candidates[N_VALID..N_VALID + N_TEST].to_vec();

        Ok(Self {
            by_name,
            borders,
            eval_valid,
            eval_test,
        })
    }

    fn neighbors_of(&self, name: &str) -> Vec<&'static str> {
        self.borders
            .iter()
            .filter_map(|&(a, b)| {
                if a == name {
                    Some(b)
                } else if b == name {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    fn splits(&self, tier: Tier) -> Splits {
        let held_out: BTreeSet<&str> = self
            .eval_valid
            .iter()
            .chain(self.eval_test.iter())
            .copied()
            .collect();

        // For S3 the neighbors of held-out countries lose their own
        // region link, forcing two-hop inference through subregions.
        let mut stripped_region_neighbors: BTreeSet<&str> = BTreeSet::new();
        if tier == Tier::S3 {
            for name in &held_out {
                for n in self.neighbors_of(name) {
                    if !held_out.contains(n) {
                        stripped_region_neighbors.insert(n);
                    }
                }
            }
        }

        let mut train = Vec::new();
        for c in COUNTRIES {
            let held = held_out.contains(c.name);
            // S2/S3 drop the held-out countries' subregion link too.
            if !held || tier == Tier::S1 {
                train.push(format!("{}\tlocatedin\t{}", c.name, c.subregion.name()));
            }
            if !held && !stripped_region_neighbors.contains(c.name) {
                train.push(format!("{}\tlocatedin\t{}", c.name, c.subregion.region()));
            }
        }
        for sub in countries::Subregion::ALL {
            train.push(format!("{}\tlocatedin\t{}", sub.name(), sub.region()));
        }
        for (a, b) in &self.borders {
            train.push(format!("{a}\tneighbor\t{b}"));
            train.push(format!("{b}\tneighbor\t{a}"));
        }

        let region_line = |name: &&str| {
            let c = self.by_name[*name];
            format!("{}\tlocatedin\t{}", name, c.subregion.region())
        };
        let valid: Vec<String> = self.eval_valid.iter().map(region_line).collect();
        let test: Vec<String> = self.eval_test.iter().map(region_line).collect();
        Splits { train, valid, test }
    }
}
