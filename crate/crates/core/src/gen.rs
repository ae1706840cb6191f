//! Seeded random framework generator with exact SCC structure.
//!
//! Each component's arguments are arranged in a directed cycle, which
//! forces strong connectivity; further intra-component attacks are drawn
//! per ordered pair. A hidden random total order over components directs
//! every cross-component attack forward, so the requested component count
//! survives whatever `p_inter` adds.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apx;
use crate::error::{Error, Result};
use crate::framework::ArgumentationFramework;

/// Identifier of the generator's RNG, recorded in every manifest.
pub const RNG_ID: &str = "chacha8";

pub const MANIFEST_FILE: &str = "manifest.txt";

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub scc_count: usize,
    /// Inclusive (min, max) component size range.
    pub args_per_scc: (usize, usize),
    /// Probability of each further ordered intra-component pair attacking.
    pub p_intra: f64,
    /// Probability of each forward cross-component pair attacking.
    pub p_inter: f64,
    pub seed: u64,
    /// Whether a size-one component's forced cycle degenerates to a
    /// self-attack (off by default: singletons stay attack-free inside).
    pub self_attack_singletons: bool,
}

impl GenParams {
    pub fn validate(&self) -> Result<()> {
        if self.scc_count == 0 {
            return Err(Error::InvalidParams("scc_count must be positive".into()));
        }
        let (min, max) = self.args_per_scc;
        if min < 1 {
            return Err(Error::InvalidParams(
                "args_per_scc minimum must be at least 1".into(),
            ));
        }
        if min > max {
            return Err(Error::InvalidParams(format!(
                "args_per_scc range ({min},{max}) is empty"
            )));
        }
        for (label, p) in [("p_intra", self.p_intra), ("p_inter", self.p_inter)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParams(format!(
                    "{label} = {p} is not a probability"
                )));
            }
        }
        Ok(())
    }
}

// Separate ChaCha streams per generation phase keep the draws independent
// of each other's counts.
const STREAM_SIZES: u64 = 0;
const STREAM_ORDER: u64 = 1;
const STREAM_INTRA: u64 = 2;
const STREAM_INTER: u64 = 3;

fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Generates a framework with exactly `scc_count` strongly connected
/// components. Deterministic in the seed.
pub fn generate(params: &GenParams) -> Result<ArgumentationFramework> {
    params.validate()?;
    let (min, max) = params.args_per_scc;

    let mut rng_sizes = stream(params.seed, STREAM_SIZES);
    let sizes: Vec<usize> = (0..params.scc_count)
        .map(|_| rng_sizes.random_range(min..=max))
        .collect();

    let mut members: Vec<Vec<usize>> = Vec::with_capacity(params.scc_count);
    let mut total = 0usize;
    for &size in &sizes {
        members.push((total..total + size).collect());
        total += size;
    }
    let names: Vec<String> = (0..total).map(|i| format!("a{i}")).collect();

    let mut attacks: Vec<(usize, usize)> = Vec::new();

    let mut rng_intra = stream(params.seed, STREAM_INTRA);
    for component in &members {
        let k = component.len();
        if k == 1 {
            if params.self_attack_singletons {
                attacks.push((component[0], component[0]));
            }
            continue;
        }
        for j in 0..k {
            attacks.push((component[j], component[(j + 1) % k]));
        }
        for x in 0..k {
            for y in 0..k {
                if x == y || y == (x + 1) % k {
                    continue;
                }
                if rng_intra.random_bool(params.p_intra) {
                    attacks.push((component[x], component[y]));
                }
            }
        }
    }

    let mut rng_order = stream(params.seed, STREAM_ORDER);
    let mut order: Vec<usize> = (0..params.scc_count).collect();
    for i in (1..order.len()).rev() {
        let j = rng_order.random_range(0..=i);
        order.swap(i, j);
    }

    if params.p_inter > 0.0 {
        let mut rng_inter = stream(params.seed, STREAM_INTER);
        for i in 0..params.scc_count {
            for j in (i + 1)..params.scc_count {
                for &src in &members[order[i]] {
                    for &dst in &members[order[j]] {
                        if rng_inter.random_bool(params.p_inter) {
                            attacks.push((src, dst));
                        }
                    }
                }
            }
        }
    }

    ArgumentationFramework::new(
        names.iter(),
        attacks
            .iter()
            .map(|&(a, b)| (names[a].as_str(), names[b].as_str())),
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct ManifestEntry {
    pub filename: String,
    pub params: GenParams,
    pub arg_count: usize,
    pub attack_count: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn params(&self) -> Vec<GenParams> {
        self.entries.iter().map(|e| e.params.clone()).collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("# corpus manifest v1\n");
        let _ = writeln!(out, "# rng={RNG_ID}");
        out.push_str(
            "# fields=filename,seed,scc_count,args_min,args_max,p_intra,p_inter,\
             self_attack_singletons,arg_count,attack_count\n",
        );
        for e in &self.entries {
            let p = &e.params;
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                e.filename,
                p.seed,
                p.scc_count,
                p.args_per_scc.0,
                p.args_per_scc.1,
                p.p_intra,
                p.p_inter,
                p.self_attack_singletons,
                e.arg_count,
                e.attack_count
            );
        }
        out
    }

    pub fn parse(text: &str) -> Result<Manifest> {
        let mut entries = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 10 {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("manifest row has {} fields, expected 10", fields.len()),
                });
            }
            let field_err = |what: &str| Error::Parse {
                line: idx + 1,
                message: format!("bad {what} in manifest row"),
            };
            entries.push(ManifestEntry {
                filename: fields[0].to_owned(),
                params: GenParams {
                    seed: fields[1].parse().map_err(|_| field_err("seed"))?,
                    scc_count: fields[2].parse().map_err(|_| field_err("scc_count"))?,
                    args_per_scc: (
                        fields[3].parse().map_err(|_| field_err("args_min"))?,
                        fields[4].parse().map_err(|_| field_err("args_max"))?,
                    ),
                    p_intra: fields[5].parse().map_err(|_| field_err("p_intra"))?,
                    p_inter: fields[6].parse().map_err(|_| field_err("p_inter"))?,
                    self_attack_singletons: fields[7]
                        .parse()
                        .map_err(|_| field_err("self_attack_singletons"))?,
                },
                arg_count: fields[8].parse().map_err(|_| field_err("arg_count"))?,
                attack_count: fields[9].parse().map_err(|_| field_err("attack_count"))?,
            });
        }
        Ok(Manifest { entries })
    }

    pub fn load(path: &Path) -> Result<Manifest> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::file_io(path, e))?;
        Self::parse(&text)
    }
}

/// Writes one APX file per parameter set plus a manifest describing them.
pub fn write_corpus(params: &[GenParams], directory: &Path) -> Result<Manifest> {
    std::fs::create_dir_all(directory).map_err(|e| Error::file_io(directory, e))?;
    let mut entries = Vec::with_capacity(params.len());
    for (i, p) in params.iter().enumerate() {
        let af = generate(p)?;
        let filename = format!("instance_{i:04}.apx");
        let path: PathBuf = directory.join(&filename);
        std::fs::write(&path, apx::print_apx(&af)).map_err(|e| Error::file_io(&path, e))?;
        entries.push(ManifestEntry {
            filename,
            params: p.clone(),
            arg_count: af.len(),
            attack_count: af.attack_count(),
        });
    }
    let manifest = Manifest { entries };
    let manifest_path = directory.join(MANIFEST_FILE);
    std::fs::write(&manifest_path, manifest.render())
        .map_err(|e| Error::file_io(&manifest_path, e))?;
    Ok(manifest)
}
