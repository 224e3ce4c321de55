//! Run configuration: defaults, then a flat JSON file, then command-line flags.

use std::path::{Path, PathBuf};

use jones_asymptotics::asymptotics::AngleGrid;
use jones_asymptotics::MirrorConvention;
use serde::Deserialize;

use crate::error::CliError;

pub const DEFAULT_CACHE: &str = ".jonesasym-cache";
pub const DEFAULT_N_LIST: [u32; 5] = [200, 400, 800, 1600, 3200];

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// `None` means the built-in catalog.
    pub catalog_path: Option<PathBuf>,
    pub cache_dir: PathBuf,
    pub k_max: usize,
    pub series_order: usize,
    pub loop_order: usize,
    pub precision_bits: u32,
    pub mirror_convention: MirrorConvention,
    pub angle_grid: AngleGrid,
    pub n_list: Vec<u32>,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            catalog_path: None,
            cache_dir: PathBuf::from(DEFAULT_CACHE),
            k_max: 12,
            series_order: 8,
            loop_order: 1,
            precision_bits: 128,
            mirror_convention: MirrorConvention::Standard,
            angle_grid: AngleGrid::imaginary_axis(&[0.05]).expect("valid"),
            n_list: DEFAULT_N_LIST.to_vec(),
            out: None,
        }
    }
}

/// Either a number or a string such as `"200..3200..200"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum NItem {
    Number(u32),
    Text(String),
}

/// Either `"re,im"` or `[re, im]`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum AlphaItem {
    Pair(f64, f64),
    Text(String),
}

/// The config file and the command-line flags share this shape.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub catalog: Option<PathBuf>,
    pub cache: Option<PathBuf>,
    pub kmax: Option<usize>,
    pub order: Option<usize>,
    pub loops: Option<usize>,
    pub precision: Option<u32>,
    pub mirror: Option<String>,
    pub alpha: Option<Vec<AlphaItem>>,
    pub n: Option<Vec<NItem>>,
    pub out: Option<PathBuf>,
}

impl Overrides {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }

    fn apply(self, cfg: &mut RunConfig) -> Result<(), CliError> {
        if let Some(v) = self.catalog {
            cfg.catalog_path = Some(v);
        }
        if let Some(v) = self.cache {
            cfg.cache_dir = v;
        }
        if let Some(v) = self.kmax {
            cfg.k_max = v;
        }
        if let Some(v) = self.order {
            cfg.series_order = v;
        }
        if let Some(v) = self.loops {
            cfg.loop_order = v;
        }
        if let Some(v) = self.precision {
            cfg.precision_bits = v;
        }
        if let Some(v) = self.mirror {
            cfg.mirror_convention = parse_mirror(&v)?;
        }
        if let Some(v) = self.alpha {
            let pts = v.iter().map(parse_alpha).collect::<Result<Vec<_>, _>>()?;
            let desc = pts.iter().map(|(re, im)| format!("{re},{im}")).collect::<Vec<_>>().join(" ");
            cfg.angle_grid = AngleGrid::new(pts, format!("alpha = {desc}")).map_err(|e| CliError::Usage(e.to_string()))?;
        }
        if let Some(v) = self.n {
            let mut list = Vec::new();
            for item in &v {
                match item {
                    NItem::Number(n) => list.push(*n),
                    NItem::Text(s) => list.extend(parse_n(s)?),
                }
            }
            cfg.n_list = list;
        }
        if let Some(v) = self.out {
            cfg.out = Some(v);
        }
        Ok(())
    }
}

impl RunConfig {
    /// Defaults, overridden by `file`, overridden by `cli`.
    pub fn resolve(file: Option<Overrides>, cli: Overrides) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        if let Some(f) = file {
            f.apply(&mut cfg)?;
        }
        cli.apply(&mut cfg)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.k_max == 0 || self.series_order == 0 || self.loop_order == 0 {
            return Err(CliError::Usage("--kmax, --order and --loops must be positive".into()));
        }
        if self.precision_bits < 64 {
            return Err(CliError::Usage(format!("--precision {} is below 64 bits", self.precision_bits)));
        }
        if self.n_list.is_empty() || self.n_list.contains(&0) {
            return Err(CliError::Usage("--n needs positive colors".into()));
        }
        if self.n_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CliError::Usage(format!("--n list {:?} is not strictly increasing", self.n_list)));
        }
        if self.angle_grid.points.is_empty() {
            return Err(CliError::Usage("at least one --alpha is needed".into()));
        }
        Ok(())
    }
}

pub fn parse_mirror(s: &str) -> Result<MirrorConvention, CliError> {
    match s {
        "standard" => Ok(MirrorConvention::Standard),
        "mirrored" => Ok(MirrorConvention::Mirrored),
        _ => Err(CliError::Usage(format!("--mirror must be standard or mirrored, got {s:?}"))),
    }
}

pub fn parse_alpha(item: &AlphaItem) -> Result<(f64, f64), CliError> {
    let bad = |s: &str| CliError::Usage(format!("--alpha expects \"re,im\", got {s:?}"));
    match item {
        AlphaItem::Pair(re, im) => Ok((*re, *im)),
        AlphaItem::Text(s) => {
            let (re, im) = s.split_once(',').ok_or_else(|| bad(s))?;
            let re: f64 = re.trim().parse().map_err(|_| bad(s))?;
            let im: f64 = im.trim().parse().map_err(|_| bad(s))?;
            Ok((re, im))
        }
    }
}

/// `"400"` or `"a..b..step"` (inclusive of `b` when it lies on the step).
pub fn parse_n(s: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::Usage(format!("--n expects a color or \"a..b..step\", got {s:?}"));
    let parts: Vec<&str> = s.split("..").collect();
    let num = |p: &str| p.trim().parse::<u32>().map_err(|_| bad());
    match parts.as_slice() {
        [n] => Ok(vec![num(n)?]),
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if step == 0 || a > b {
                return Err(bad());
            }
            Ok((a..=b).step_by(step as usize).collect())
        }
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_ranges() {
        assert_eq!(parse_n("7").unwrap(), vec![7]);
        assert_eq!(parse_n("200..1000..200").unwrap(), vec![200, 400, 600, 800, 1000]);
        assert_eq!(parse_n("1..10..4").unwrap(), vec![1, 5, 9]);
        assert!(parse_n("1..2").is_err());
        assert!(parse_n("5..1..1").is_err());
        assert!(parse_n("1..5..0").is_err());
    }

    #[test]
    fn alphas() {
        assert_eq!(parse_alpha(&AlphaItem::Text("0, 0.05".into())).unwrap(), (0.0, 0.05));
        assert_eq!(parse_alpha(&AlphaItem::Text("-0.1,2e-2".into())).unwrap(), (-0.1, 0.02));
        assert!(parse_alpha(&AlphaItem::Text("0.05".into())).is_err());
    }

    #[test]
    fn precedence_cli_over_file_over_defaults() {
        let file: Overrides = serde_json::from_str(r#"{"kmax": 6, "order": 5, "n": ["100..300..100"], "alpha": [[0.0, 0.02]]}"#).unwrap();
        let cli = Overrides {
            order: Some(7),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(Some(file), cli).unwrap();
        assert_eq!(cfg.k_max, 6);
        assert_eq!(cfg.series_order, 7);
        assert_eq!(cfg.loop_order, 1);
        assert_eq!(cfg.n_list, vec![100, 200, 300]);
        assert_eq!(cfg.angle_grid.points, vec![(0.0, 0.02)]);
    }

    #[test]
    fn invariants_are_enforced() {
        let bad = |o: Overrides| RunConfig::resolve(None, o).is_err();
        assert!(bad(Overrides { precision: Some(32), ..Default::default() }));
        assert!(bad(Overrides { order: Some(0), ..Default::default() }));
        assert!(bad(Overrides {
            n: Some(vec![NItem::Number(400), NItem::Number(200)]),
            ..Default::default()
        }));
        assert!(bad(Overrides {
            alpha: Some(vec![AlphaItem::Pair(0.0, 0.0)]),
            ..Default::default()
        }));
        assert!(bad(Overrides { mirror: Some("left".into()), ..Default::default() }));
    }

    #[test]
    fn unknown_file_keys_are_rejected() {
        assert!(serde_json::from_str::<Overrides>(r#"{"kmaxx": 3}"#).is_err());
    }
}
