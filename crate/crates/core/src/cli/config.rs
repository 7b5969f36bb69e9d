//! `key = value` run configuration.
//!
//! Parsing happens in two stages: the text (plus any command-line overrides)
//! is collected into a raw key map that remembers where each value came
//! from, then every key is converted and range-checked so errors can name the
//! offending line. [`RunConfig::echo`] writes the fully defaulted config back
//! in the same syntax; reparsing it gives an equal config.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::propagation::{Normalization, RegimeThresholds};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Full,
    Narrow,
    Wide,
    Seds,
    Compare,
}

impl Mode {
    pub const ALL: [Mode; 5] = [Mode::Full, Mode::Narrow, Mode::Wide, Mode::Seds, Mode::Compare];

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::Narrow => "narrow",
            Mode::Wide => "wide",
            Mode::Seds => "seds",
            Mode::Compare => "compare",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown mode '{s}' (expected full, narrow, wide, seds or compare)"))
    }
}

/// Screen position in time or distance; distance converts as `t = L / k0x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScreenSpec {
    Time(f64),
    Distance(f64),
}

/// Sampling of the deviation-angle surface in `seds` mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSpec {
    pub hbar_min: f64,
    pub hbar_max: f64,
    pub hbar_samples: usize,
    pub b_min: f64,
    pub b_max: f64,
    pub b_samples: usize,
    pub order: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub hbar: f64,
    pub omega_e: f64,
    pub omega_alpha: [f64; 2],
    pub gamma: [f64; 2],
    pub lambda_alpha: Option<f64>,
    pub zeta: f64,
    pub k0x: f64,
    pub x0: f64,
    pub y0: f64,
    pub w: f64,
    pub w_prime: f64,
    pub d: f64,
    pub d_prime: f64,
    pub a_slit: f64,
    pub screen: ScreenSpec,
    pub y_min: f64,
    pub y_max: f64,
    pub y_samples: usize,
    pub normalization: Normalization,
    pub thresholds: RegimeThresholds,
    pub seds_c: f64,
    pub seds_v: f64,
    pub seds_r: f64,
    pub seds_n_max: u32,
    pub seds_b_half: f64,
    pub surface: SurfaceSpec,
    pub out_csv: Option<PathBuf>,
    pub out_svg: Option<PathBuf>,
}

/// Where a value was set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Line(usize),
    Override,
    Default,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Line(n) => write!(f, "line {n}"),
            Source::Override => write!(f, "command-line override"),
            Source::Default => write!(f, "default value"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("{source_}: malformed entry '{text}' (expected 'key = value')")]
    Malformed { source_: Source, text: String },
    #[error("{source_}: unknown key '{key}'")]
    UnknownKey { source_: Source, key: String },
    #[error("{source_}: key '{key}' is set more than once")]
    Duplicate { source_: Source, key: String },
    #[error("{source_}: {key} = {value}: {reason}")]
    Invalid {
        source_: Source,
        key: String,
        value: String,
        reason: String,
    },
    #[error("missing required keys: {}", .0.join(", "))]
    Missing(Vec<String>),
    #[error("set exactly one of 'time' and 'screen_distance'")]
    ScreenConflict,
    #[error("cannot read config {path}: {message}")]
    Io { path: String, message: String },
}

/// Every accepted key with its default, as shown by `--help`.
pub const KEYS: &[(&str, &str)] = &[
    ("hbar", "required; dimensionless Planck parameter"),
    ("omega_e", "required; bare system frequency"),
    ("omega_alpha1", "required; first environment frequency"),
    ("omega_alpha2", "required; second environment frequency"),
    ("gamma1", "required; coupling in (0, 1)"),
    ("gamma2", "required; coupling in (0, 1)"),
    ("lambda_alpha", "optional; environment wavelength for the validity report"),
    ("zeta", "default sqrt(omega_e / hbar)"),
    ("k0x", "default 1"),
    ("x0", "default 0"),
    ("y0", "default 0"),
    ("w", "required; upper slit width"),
    ("w_prime", "required; lower slit width"),
    ("d", "required; upper slit offset"),
    ("d_prime", "required; lower slit offset"),
    ("a_slit", "default 1"),
    ("time", "evolution time (exactly one of time, screen_distance)"),
    ("screen_distance", "screen distance L, t = L / k0x"),
    ("y_min", "required; screen grid start"),
    ("y_max", "required; screen grid end"),
    ("y_samples", "required; number of grid points (>= 2)"),
    ("mode", "default full; full | narrow | wide | seds | compare"),
    ("normalization", "default unit_peak; raw | unit_peak"),
    ("narrow_factor", "default 5; narrow limit needs delta_y <= min width / factor"),
    ("narrow_warn_factor", "default 10; warn when delta_y > min width / factor"),
    ("wide_factor", "default 5; wide limit needs delta_y >= factor * w"),
    ("seds_c", "default 1"),
    ("seds_v", "default 1"),
    ("seds_r", "default 1; omega_n = seds_v / seds_r"),
    ("seds_n_max", "default 3"),
    ("seds_b_half", "default w / 2"),
    ("seds_surface_hbar_min", "default 0.01"),
    ("seds_surface_hbar_max", "default 0.1"),
    ("seds_surface_hbar_samples", "default 10"),
    ("seds_surface_b_min", "default 0.1"),
    ("seds_surface_b_max", "default 1"),
    ("seds_surface_b_samples", "default 10"),
    ("seds_surface_order", "default 1"),
    ("out_csv", "optional; CSV path (stdout when absent)"),
    ("out_svg", "optional; SVG path"),
];

const REQUIRED: &[&str] = &[
    "hbar",
    "omega_e",
    "omega_alpha1",
    "omega_alpha2",
    "gamma1",
    "gamma2",
    "w",
    "w_prime",
    "d",
    "d_prime",
    "y_min",
    "y_max",
    "y_samples",
];

/// Lines of the config document before conversion.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    entries: BTreeMap<String, (String, Source)>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut raw = RawConfig::default();
        for (index, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            raw.insert(content, Source::Line(index + 1), false)?;
        }
        Ok(raw)
    }

    /// Applies a `key=value` override, replacing any existing value.
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), ConfigError> {
        self.insert(assignment.trim(), Source::Override, true)
    }

    pub fn set(&mut self, key: &str, value: &str) {
        self.entries.insert(key.to_string(), (value.to_string(), Source::Override));
    }

    pub fn remove(&mut self, key: &str) {
        self.entries.remove(key);
    }

    fn insert(&mut self, content: &str, source: Source, replace: bool) -> Result<(), ConfigError> {
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError::Malformed {
                source_: source,
                text: content.to_string(),
            });
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(ConfigError::Malformed {
                source_: source,
                text: content.to_string(),
            });
        }
        if !KEYS.iter().any(|(k, _)| *k == key) {
            return Err(ConfigError::UnknownKey {
                source_: source,
                key: key.to_string(),
            });
        }
        if !replace && self.entries.contains_key(key) {
            return Err(ConfigError::Duplicate {
                source_: source,
                key: key.to_string(),
            });
        }
        self.entries.insert(key.to_string(), (value.to_string(), source));
        Ok(())
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((value, source)) => value.parse::<T>().map(Some).map_err(|_| ConfigError::Invalid {
                source_: *source,
                key: key.to_string(),
                value: value.clone(),
                reason: format!("cannot parse as {}", std::any::type_name::<T>()),
            }),
        }
    }

    fn invalid(&self, key: &str, reason: &str) -> ConfigError {
        let (value, source) = match self.entries.get(key) {
            Some((value, source)) => (value.clone(), *source),
            None => (String::from("(default)"), Source::Default),
        };
        ConfigError::Invalid {
            source_: source,
            key: key.to_string(),
            value,
            reason: reason.to_string(),
        }
    }

    /// Converts and validates every key, applying defaults.
    pub fn into_config(self) -> Result<RunConfig, ConfigError> {
        let missing: Vec<String> = REQUIRED
            .iter()
            .filter(|k| !self.entries.contains_key(**k))
            .map(|k| k.to_string())
            .collect();
        if !missing.is_empty() {
            return Err(ConfigError::Missing(missing));
        }

        let real = |key: &str| -> Result<Option<f64>, ConfigError> {
            match self.get::<f64>(key)? {
                Some(v) if !v.is_finite() => Err(self.invalid(key, "must be finite")),
                other => Ok(other),
            }
        };
        let req = |key: &str| real(key).map(|v| v.expect("required key checked above"));
        let check = |key: &str, v: f64, ok: bool, reason: &str| if ok { Ok(v) } else { Err(self.invalid(key, reason)) };
        let positive = |key: &str, v: f64| check(key, v, v > 0.0, "must be positive");

        let hbar = positive("hbar", req("hbar")?)?;
        let omega_e = positive("omega_e", req("omega_e")?)?;
        let omega_alpha = [
            positive("omega_alpha1", req("omega_alpha1")?)?,
            positive("omega_alpha2", req("omega_alpha2")?)?,
        ];
        let unit = |key: &str| {
            let v = req(key)?;
            check(key, v, v > 0.0 && v < 1.0, "coupling strength must lie in the open interval (0, 1)")
        };
        let gamma = [unit("gamma1")?, unit("gamma2")?];
        let lambda_alpha = match real("lambda_alpha")? {
            Some(v) => Some(positive("lambda_alpha", v)?),
            None => None,
        };

        let zeta = positive("zeta", real("zeta")?.unwrap_or((omega_e / hbar).sqrt()))?;
        let k0x = positive("k0x", real("k0x")?.unwrap_or(1.0))?;
        let x0 = real("x0")?.unwrap_or(0.0);
        let y0 = real("y0")?.unwrap_or(0.0);

        let w = positive("w", req("w")?)?;
        let w_prime = positive("w_prime", req("w_prime")?)?;
        let non_negative = |key: &str, v: f64| check(key, v, v >= 0.0, "must be non-negative");
        let d = non_negative("d", req("d")?)?;
        let d_prime = non_negative("d_prime", req("d_prime")?)?;
        if d + d_prime == 0.0 {
            return Err(self.invalid("d", "the slits must be separated (d + d_prime > 0)"));
        }
        let a_slit = positive("a_slit", real("a_slit")?.unwrap_or(1.0))?;

        let screen = match (real("time")?, real("screen_distance")?) {
            (Some(t), None) => ScreenSpec::Time(positive("time", t)?),
            (None, Some(l)) => ScreenSpec::Distance(positive("screen_distance", l)?),
            _ => return Err(ConfigError::ScreenConflict),
        };

        let y_min = req("y_min")?;
        let y_max = req("y_max")?;
        if !(y_min < y_max) {
            return Err(self.invalid("y_max", "must exceed y_min"));
        }
        let y_samples: usize = self.get("y_samples")?.expect("required key checked above");
        if y_samples < 2 {
            return Err(self.invalid("y_samples", "at least two samples are required"));
        }

        let mode = match self.entries.get("mode") {
            None => Mode::Full,
            Some((v, _)) => v.parse().map_err(|e: String| self.invalid("mode", &e))?,
        };
        let normalization = match self.entries.get("normalization").map(|(v, _)| v.as_str()) {
            None | Some("unit_peak") => Normalization::UnitPeak,
            Some("raw") => Normalization::Raw,
            Some(_) => return Err(self.invalid("normalization", "expected raw or unit_peak")),
        };

        let defaults = RegimeThresholds::default();
        let thresholds = RegimeThresholds {
            narrow_factor: positive("narrow_factor", real("narrow_factor")?.unwrap_or(defaults.narrow_factor))?,
            narrow_warn_factor: positive(
                "narrow_warn_factor",
                real("narrow_warn_factor")?.unwrap_or(defaults.narrow_warn_factor),
            )?,
            wide_factor: positive("wide_factor", real("wide_factor")?.unwrap_or(defaults.wide_factor))?,
        };

        let seds_c = positive("seds_c", real("seds_c")?.unwrap_or(1.0))?;
        let seds_v = positive("seds_v", real("seds_v")?.unwrap_or(1.0))?;
        let seds_r = positive("seds_r", real("seds_r")?.unwrap_or(1.0))?;
        let seds_n_max: u32 = self.get("seds_n_max")?.unwrap_or(3);
        if seds_n_max < 1 {
            return Err(self.invalid("seds_n_max", "must be at least 1"));
        }
        let seds_b_half = positive("seds_b_half", real("seds_b_half")?.unwrap_or(0.5 * w))?;

        let count = |key: &str, default: usize| -> Result<usize, ConfigError> {
            let n: usize = self.get(key)?.unwrap_or(default);
            if n >= 1 {
                Ok(n)
            } else {
                Err(self.invalid(key, "must be at least 1"))
            }
        };
        let surface = SurfaceSpec {
            hbar_min: positive("seds_surface_hbar_min", real("seds_surface_hbar_min")?.unwrap_or(0.01))?,
            hbar_max: positive("seds_surface_hbar_max", real("seds_surface_hbar_max")?.unwrap_or(0.1))?,
            hbar_samples: count("seds_surface_hbar_samples", 10)?,
            b_min: positive("seds_surface_b_min", real("seds_surface_b_min")?.unwrap_or(0.1))?,
            b_max: positive("seds_surface_b_max", real("seds_surface_b_max")?.unwrap_or(1.0))?,
            b_samples: count("seds_surface_b_samples", 10)?,
            order: self.get("seds_surface_order")?.unwrap_or(1),
        };
        if surface.hbar_max < surface.hbar_min {
            return Err(self.invalid("seds_surface_hbar_max", "must not be below seds_surface_hbar_min"));
        }
        if surface.b_max < surface.b_min {
            return Err(self.invalid("seds_surface_b_max", "must not be below seds_surface_b_min"));
        }

        let path = |key: &str| self.entries.get(key).map(|(v, _)| PathBuf::from(v));

        Ok(RunConfig {
            mode,
            hbar,
            omega_e,
            omega_alpha,
            gamma,
            lambda_alpha,
            zeta,
            k0x,
            x0,
            y0,
            w,
            w_prime,
            d,
            d_prime,
            a_slit,
            screen,
            y_min,
            y_max,
            y_samples,
            normalization,
            thresholds,
            seds_c,
            seds_v,
            seds_r,
            seds_n_max,
            seds_b_half,
            surface,
            out_csv: path("out_csv"),
            out_svg: path("out_svg"),
        })
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    RawConfig::parse(text)?.into_config()
}

/// Recovers the config from the `# key = value` header of an output file.
pub fn parse_echo(text: &str) -> Result<RunConfig, ConfigError> {
    let body: String = text
        .lines()
        .filter_map(|l| l.strip_prefix("# "))
        .map(|l| format!("{l}\n"))
        .collect();
    parse_config(&body)
}

impl RunConfig {
    /// Evolution time implied by the screen spec.
    pub fn time(&self) -> f64 {
        match self.screen {
            ScreenSpec::Time(t) => t,
            ScreenSpec::Distance(l) => l / self.k0x,
        }
    }

    /// Every key with its effective value, one `key = value` per line.
    pub fn echo(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: &dyn fmt::Display| {
            let _ = writeln!(out, "{k} = {v}");
        };
        put("mode", &self.mode.as_str());
        put("hbar", &self.hbar);
        put("omega_e", &self.omega_e);
        put("omega_alpha1", &self.omega_alpha[0]);
        put("omega_alpha2", &self.omega_alpha[1]);
        put("gamma1", &self.gamma[0]);
        put("gamma2", &self.gamma[1]);
        if let Some(l) = self.lambda_alpha {
            put("lambda_alpha", &l);
        }
        put("zeta", &self.zeta);
        put("k0x", &self.k0x);
        put("x0", &self.x0);
        put("y0", &self.y0);
        put("w", &self.w);
        put("w_prime", &self.w_prime);
        put("d", &self.d);
        put("d_prime", &self.d_prime);
        put("a_slit", &self.a_slit);
        match self.screen {
            ScreenSpec::Time(t) => put("time", &t),
            ScreenSpec::Distance(l) => put("screen_distance", &l),
        }
        put("y_min", &self.y_min);
        put("y_max", &self.y_max);
        put("y_samples", &self.y_samples);
        put("normalization", &self.normalization.as_str());
        put("narrow_factor", &self.thresholds.narrow_factor);
        put("narrow_warn_factor", &self.thresholds.narrow_warn_factor);
        put("wide_factor", &self.thresholds.wide_factor);
        put("seds_c", &self.seds_c);
        put("seds_v", &self.seds_v);
        put("seds_r", &self.seds_r);
        put("seds_n_max", &self.seds_n_max);
        put("seds_b_half", &self.seds_b_half);
        put("seds_surface_hbar_min", &self.surface.hbar_min);
        put("seds_surface_hbar_max", &self.surface.hbar_max);
        put("seds_surface_hbar_samples", &self.surface.hbar_samples);
        put("seds_surface_b_min", &self.surface.b_min);
        put("seds_surface_b_max", &self.surface.b_max);
        put("seds_surface_b_samples", &self.surface.b_samples);
        put("seds_surface_order", &self.surface.order);
        if let Some(p) = &self.out_csv {
            put("out_csv", &p.display());
        }
        if let Some(p) = &self.out_svg {
            put("out_svg", &p.display());
        }
        out
    }
}

/// Key reference for `--help`.
pub fn key_reference() -> String {
    let mut out = String::from("Config keys (`key = value`, `#` comments):\n");
    for (k, doc) in KEYS {
        let _ = writeln!(out, "  {k:<28} {doc}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "\
hbar = 0.05
omega_e = 0.5
omega_alpha1 = 1
omega_alpha2 = 1
gamma1 = 0.1
gamma2 = 0.1   # trailing comment
w = 0.2
w_prime = 0.2
d = 0.5
d_prime = 0.5
time = 1
y_min = -2
y_max = 2
y_samples = 101
";

    #[test]
    fn defaults_are_applied() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.mode, Mode::Full);
        assert_eq!(c.zeta, (0.5f64 / 0.05).sqrt());
        assert_eq!((c.k0x, c.x0, c.y0, c.a_slit), (1.0, 0.0, 0.0, 1.0));
        assert_eq!(c.normalization, Normalization::UnitPeak);
        assert_eq!((c.seds_c, c.seds_v, c.seds_r, c.seds_n_max), (1.0, 1.0, 1.0, 3));
        assert_eq!(c.seds_b_half, 0.1);
        assert_eq!(c.time(), 1.0);
        assert_eq!(c.thresholds, RegimeThresholds::default());
    }

    #[test]
    fn gamma_bound_is_cited() {
        let text = MINIMAL.replace("gamma1 = 0.1", "gamma1 = 1.5");
        let err = parse_config(&text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 5") && msg.contains("gamma1") && msg.contains("(0, 1)"), "{msg}");
    }

    #[test]
    fn all_missing_keys_listed() {
        let text = "hbar = 0.05\nomega_e = 0.5\n";
        match parse_config(text) {
            Err(ConfigError::Missing(keys)) => {
                assert_eq!(keys.len(), REQUIRED.len() - 2);
                assert!(keys.contains(&"gamma2".to_string()) && keys.contains(&"y_samples".to_string()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_and_malformed_entries() {
        let err = parse_config(&format!("{MINIMAL}colour = red\n")).unwrap_err();
        assert_eq!(
            err,
            ConfigError::UnknownKey {
                source_: Source::Line(15),
                key: "colour".into()
            }
        );
        assert!(matches!(
            parse_config(&format!("{MINIMAL}just words\n")),
            Err(ConfigError::Malformed { .. })
        ));
        assert!(matches!(
            parse_config(&format!("{MINIMAL}hbar = 0.01\n")),
            Err(ConfigError::Duplicate { .. })
        ));
        let err = parse_config(&MINIMAL.replace("w = 0.2", "w = wide")).unwrap_err();
        assert!(err.to_string().contains("line 7"));
    }

    #[test]
    fn screen_spec_exclusive() {
        let both = format!("{MINIMAL}screen_distance = 3\n");
        assert_eq!(parse_config(&both), Err(ConfigError::ScreenConflict));
        let neither = MINIMAL.replace("time = 1\n", "");
        assert_eq!(parse_config(&neither), Err(ConfigError::ScreenConflict));
        let distance = MINIMAL.replace("time = 1", "screen_distance = 6") + "k0x = 2\n";
        assert_eq!(parse_config(&distance).unwrap().time(), 3.0);
    }

    #[test]
    fn invariant_violations() {
        assert!(parse_config(&MINIMAL.replace("y_samples = 101", "y_samples = 1")).is_err());
        assert!(parse_config(&MINIMAL.replace("y_max = 2", "y_max = -3")).is_err());
        assert!(parse_config(&MINIMAL.replace("d = 0.5", "d = -0.5")).is_err());
        assert!(parse_config(&MINIMAL.replace("hbar = 0.05", "hbar = inf")).is_err());
        assert!(parse_config(&format!("{MINIMAL}mode = sideways\n")).is_err());
        assert!(parse_config(&format!("{MINIMAL}normalization = peak\n")).is_err());
    }

    #[test]
    fn overrides_replace_values() {
        let mut raw = RawConfig::parse(MINIMAL).unwrap();
        raw.apply_override("hbar=0.02").unwrap();
        raw.apply_override("mode = wide").unwrap();
        let c = raw.into_config().unwrap();
        assert_eq!(c.hbar, 0.02);
        assert_eq!(c.mode, Mode::Wide);
        let mut raw = RawConfig::parse(MINIMAL).unwrap();
        let err = raw.apply_override("nonsense=1").unwrap_err();
        assert!(err.to_string().contains("command-line override"));
    }

    #[test]
    fn echo_round_trip() {
        let text = format!("{MINIMAL}lambda_alpha = 0.7\nout_csv = /tmp/x.csv\ny0 = 0.123456789012345678\n");
        let c = parse_config(&text).unwrap();
        let again = parse_config(&c.echo()).unwrap();
        assert_eq!(c, again);
        let header: String = c.echo().lines().map(|l| format!("# {l}\n")).collect();
        assert_eq!(parse_echo(&format!("{header}y,intensity\n0,1\n")).unwrap(), c);
    }
}
