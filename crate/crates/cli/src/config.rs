//! Run-configuration files: a strict INI dialect with six known sections,
//! validated through the core constructors and re-emittable byte for byte.
//!
//! External units are millimeters, newtons, megapascals, and degrees; the
//! optics section speaks micrometers because wavelengths in millimeters help
//! nobody. Angles become radians at the boundary to the core crate.

use std::collections::BTreeMap;
use std::str::FromStr;

use seesaw_core::{
    DesignConstraints, DesignObjective, DesignSpace, DisplacementConvention, Material, OpticsSpec,
    ParamRange, ScrewSpec, SeesawGeometry, ThicknessAssignment, DEFAULT_CANDIDATE_CAP,
};
use thiserror::Error;

/// Rejected configuration text.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    /// The text itself is malformed; `line` is 1-based.
    #[error("config syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },

    /// The text parsed but a value does not stand up to validation.
    #[error("config value error: `{field}`: {message}")]
    Invalid { field: String, message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError::Syntax {
        line,
        message: message.into(),
    }
}

fn invalid(field: impl Into<String>, message: impl ToString) -> ConfigError {
    ConfigError::Invalid {
        field: field.into(),
        message: message.to_string(),
    }
}

/// Screw parameters exactly as configured, rotation still in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScrewConfig {
    pub pitch_mm: f64,
    pub min_rotation_deg: f64,
    pub diameter_mm: f64,
}

impl ScrewConfig {
    /// Stock M6x2 screw with a 5 degree minimum hand rotation.
    pub fn stock() -> Self {
        Self {
            pitch_mm: 2.0,
            min_rotation_deg: 5.0,
            diameter_mm: 6.0,
        }
    }

    /// Converts to the core type, degrees to radians.
    pub fn to_core(self) -> Result<ScrewSpec<f64>, ConfigError> {
        ScrewSpec::new(
            self.pitch_mm,
            self.min_rotation_deg.to_radians(),
            self.diameter_mm,
        )
        .map_err(|err| invalid("screw", err))
    }
}

/// The `[search]` section: per-axis ranges plus search-wide settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub l1: ParamRange<f64>,
    pub l2: ParamRange<f64>,
    pub l3: ParamRange<f64>,
    pub t1: ParamRange<f64>,
    pub t2: ParamRange<f64>,
    pub b: ParamRange<f64>,
    pub candidate_cap: usize,
    pub convention: DisplacementConvention,
}

/// One fully validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub geometry: SeesawGeometry<f64>,
    pub material: Material<f64>,
    pub screw: ScrewConfig,
    pub optics: OpticsSpec<f64>,
    pub search: Option<SearchConfig>,
    pub constraints: Option<DesignConstraints<f64>>,
}

impl RunConfig {
    /// Assembles the design space for the optimizer; needs `[search]`.
    pub fn design_space(&self) -> Result<DesignSpace<f64>, ConfigError> {
        let search = self
            .search
            .as_ref()
            .ok_or_else(|| invalid("search", "missing [search] section"))?;
        Ok(DesignSpace {
            l1: search.l1,
            l2: search.l2,
            l3: search.l3,
            t1: search.t1,
            t2: search.t2,
            b: search.b,
            material: self.material.clone(),
            screw: self.screw.to_core()?,
            assignment: self.geometry.thickness_assignment,
            convention: search.convention,
            candidate_cap: search.candidate_cap,
        })
    }

    /// The `[constraints]` section, required for searching.
    pub fn require_constraints(&self) -> Result<DesignConstraints<f64>, ConfigError> {
        self.constraints.ok_or_else(|| {
            invalid(
                "constraints",
                "missing [constraints] section (set target_ratio or target_dz)",
            )
        })
    }
}

/// Parse result: the configuration plus any non-fatal warnings.
#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub config: RunConfig,
    pub warnings: Vec<String>,
}

const SECTIONS: [&str; 6] = [
    "geometry",
    "material",
    "screw",
    "optics",
    "search",
    "constraints",
];

fn known_keys(section: &str) -> &'static [&'static str] {
    match section {
        "geometry" => &["l1", "l2", "l3", "t1", "t2", "b", "thickness_assignment"],
        "material" => &["name", "youngs_modulus", "bending_strength", "density"],
        "screw" => &["pitch_mm", "min_rotation_deg", "diameter_mm"],
        "optics" => &["wavelength_um", "numerical_aperture", "magnification"],
        "search" => &[
            "l1",
            "l2",
            "l3",
            "t1",
            "t2",
            "b",
            "candidate_cap",
            "convention",
        ],
        "constraints" => &[
            "min_feature",
            "required_stroke",
            "safety_factor",
            "max_parasitic_fraction",
            "target_ratio",
            "target_dz",
        ],
        other => unreachable!("section names are checked before lookup: {other}"),
    }
}

type Entries = Vec<(String, String, usize)>;

struct Section<'a> {
    name: &'static str,
    entries: &'a Entries,
}

impl<'a> Section<'a> {
    fn get(&self, key: &str) -> Option<(&'a str, usize)> {
        self.entries
            .iter()
            .find(|(k, _, _)| k == key)
            .map(|(_, v, line)| (v.as_str(), *line))
    }

    fn f64_opt(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some((token, line)) => token.parse::<f64>().map(Some).map_err(|_| {
                syntax(line, format!("expected a number for `{key}`, got `{token}`"))
            }),
        }
    }

    fn f64_req(&self, key: &str) -> Result<f64, ConfigError> {
        self.f64_opt(key)?
            .ok_or_else(|| invalid(format!("{}.{key}", self.name), "missing required key"))
    }

    fn usize_opt(&self, key: &str) -> Result<Option<usize>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some((token, line)) => token.parse::<usize>().map(Some).map_err(|_| {
                syntax(
                    line,
                    format!("expected a positive integer for `{key}`, got `{token}`"),
                )
            }),
        }
    }

    fn enum_opt<E: FromStr<Err = String>>(&self, key: &str) -> Result<Option<E>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some((token, line)) => token
                .parse::<E>()
                .map(Some)
                .map_err(|message| syntax(line, message)),
        }
    }
}

/// Parses and validates one configuration text.
///
/// Unknown sections and keys, duplicates, and malformed lines are syntax
/// errors with a line number; values that parse but fail validation are
/// field-named value errors. `[geometry]` is mandatory, everything else has
/// stock defaults ([`Material::resin`], [`ScrewConfig::stock`],
/// [`OpticsSpec::stock`]); `[search]` and `[constraints]` stay absent unless
/// written.
pub fn parse_config(text: &str) -> Result<Parsed, ConfigError> {
    let mut entries: BTreeMap<&'static str, Entries> = BTreeMap::new();
    let mut seen: Vec<&'static str> = Vec::new();
    let mut current: Option<&'static str> = None;

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(syntax(line_no, "unterminated section header"));
            };
            let name = name.trim();
            let Some(&name) = SECTIONS.iter().find(|&&s| s == name) else {
                return Err(syntax(line_no, format!("unknown section [{name}]")));
            };
            if seen.contains(&name) {
                return Err(syntax(line_no, format!("duplicate section [{name}]")));
            }
            seen.push(name);
            current = Some(name);
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(syntax(line_no, "expected `key = value` or `[section]`"));
        };
        let key = line[..eq].trim();
        let value = line[eq + 1..].trim();
        let Some(section) = current else {
            return Err(syntax(
                line_no,
                format!("key `{key}` appears before any [section] header"),
            ));
        };
        if key.is_empty() {
            return Err(syntax(line_no, "empty key"));
        }
        if value.is_empty() {
            return Err(syntax(line_no, format!("empty value for `{key}`")));
        }
        let Some(&key) = known_keys(section).iter().find(|&&k| k == key) else {
            return Err(syntax(
                line_no,
                format!("unknown key `{key}` in [{section}]"),
            ));
        };
        let list = entries.entry(section).or_default();
        if list.iter().any(|(k, _, _)| k == key) {
            return Err(syntax(
                line_no,
                format!("duplicate key `{key}` in [{section}]"),
            ));
        }
        list.push((key.to_owned(), value.to_owned(), line_no));
    }

    let empty = Entries::new();
    let section = |name: &'static str| -> Option<Section<'_>> {
        if seen.contains(&name) {
            Some(Section {
                name,
                entries: entries.get(name).unwrap_or(&empty),
            })
        } else {
            None
        }
    };
    let mut warnings = Vec::new();

    let geometry = {
        let sec = section("geometry")
            .ok_or_else(|| invalid("geometry", "missing [geometry] section"))?;
        let assignment = sec
            .enum_opt::<ThicknessAssignment>("thickness_assignment")?
            .unwrap_or_default();
        SeesawGeometry::new(
            sec.f64_req("l1")?,
            sec.f64_req("l2")?,
            sec.f64_req("l3")?,
            sec.f64_req("t1")?,
            sec.f64_req("t2")?,
            sec.f64_req("b")?,
            assignment,
        )
        .map_err(|err| invalid("geometry", err))?
    };

    let material = match section("material") {
        None => Material::resin(),
        Some(sec) => {
            let modulus = sec.f64_opt("youngs_modulus")?;
            let strength = sec.f64_opt("bending_strength")?;
            let density = sec.f64_opt("density")?;
            match sec.get("name") {
                Some((name, _)) => match Material::by_name(name) {
                    Some(mut builtin) => {
                        let mut apply = |key: &str, slot: &mut f64, given: Option<f64>| {
                            if let Some(value) = given {
                                if value != *slot {
                                    warnings.push(format!(
                                        "[material] {key} = {value} overrides the builtin \
                                         `{name}` value {}",
                                        *slot
                                    ));
                                }
                                *slot = value;
                            }
                        };
                        apply("youngs_modulus", &mut builtin.youngs_modulus, modulus);
                        apply("bending_strength", &mut builtin.bending_strength, strength);
                        apply("density", &mut builtin.density, density);
                        builtin
                            .validate()
                            .map_err(|err| invalid("material", err))?;
                        builtin
                    }
                    None => {
                        let (Some(modulus), Some(strength), Some(density)) =
                            (modulus, strength, density)
                        else {
                            return Err(invalid(
                                "material",
                                format!(
                                    "unknown material `{name}`; give youngs_modulus, \
                                     bending_strength and density explicitly"
                                ),
                            ));
                        };
                        Material::new(name, modulus, strength, density)
                            .map_err(|err| invalid("material", err))?
                    }
                },
                None => {
                    let (Some(modulus), Some(strength), Some(density)) =
                        (modulus, strength, density)
                    else {
                        return Err(invalid(
                            "material",
                            "name a builtin (`resin`/`nylon`) or give youngs_modulus, \
                             bending_strength and density",
                        ));
                    };
                    Material::new("custom", modulus, strength, density)
                        .map_err(|err| invalid("material", err))?
                }
            }
        }
    };

    let screw = {
        let mut screw = ScrewConfig::stock();
        if let Some(sec) = section("screw") {
            if let Some(value) = sec.f64_opt("pitch_mm")? {
                screw.pitch_mm = value;
            }
            if let Some(value) = sec.f64_opt("min_rotation_deg")? {
                screw.min_rotation_deg = value;
            }
            if let Some(value) = sec.f64_opt("diameter_mm")? {
                screw.diameter_mm = value;
            }
        }
        screw.to_core()?;
        screw
    };

    let optics = {
        let stock = OpticsSpec::stock();
        let mut na = stock.numerical_aperture;
        let mut wavelength = stock.wavelength_um;
        let mut magnification = stock.magnification;
        if let Some(sec) = section("optics") {
            if let Some(value) = sec.f64_opt("numerical_aperture")? {
                na = value;
            }
            if let Some(value) = sec.f64_opt("wavelength_um")? {
                wavelength = value;
            }
            if let Some(value) = sec.f64_opt("magnification")? {
                magnification = value;
            }
        }
        OpticsSpec::new(na, wavelength, magnification).map_err(|err| invalid("optics", err))?
    };

    let search = match section("search") {
        None => None,
        Some(sec) => {
            // An axis left unwritten is pinned to the configured geometry.
            let axis = |key: &'static str, fallback: f64| -> Result<ParamRange<f64>, ConfigError> {
                let range = match sec.get(key) {
                    None => ParamRange::fixed(fallback),
                    Some((token, line)) => parse_range(token, line)?,
                };
                range
                    .validate(key)
                    .map_err(|err| invalid(format!("search.{key}"), err))?;
                Ok(range)
            };
            let candidate_cap = sec.usize_opt("candidate_cap")?.unwrap_or(DEFAULT_CANDIDATE_CAP);
            if candidate_cap == 0 {
                return Err(invalid("search.candidate_cap", "must be at least 1"));
            }
            Some(SearchConfig {
                l1: axis("l1", geometry.l1)?,
                l2: axis("l2", geometry.l2)?,
                l3: axis("l3", geometry.l3)?,
                t1: axis("t1", geometry.t1)?,
                t2: axis("t2", geometry.t2)?,
                b: axis("b", geometry.b)?,
                candidate_cap,
                convention: sec
                    .enum_opt::<DisplacementConvention>("convention")?
                    .unwrap_or_default(),
            })
        }
    };

    let constraints = match section("constraints") {
        None => None,
        Some(sec) => {
            let ratio = sec.f64_opt("target_ratio")?;
            let dz = sec.f64_opt("target_dz")?;
            let objective = match (ratio, dz) {
                (Some(ratio), None) => DesignObjective::TargetRatio(ratio),
                (None, Some(dz)) => DesignObjective::TargetAccuracy(dz),
                (Some(_), Some(_)) => {
                    return Err(invalid(
                        "constraints",
                        "set exactly one of target_ratio and target_dz, not both",
                    ));
                }
                (None, None) => {
                    return Err(invalid(
                        "constraints",
                        "set exactly one of target_ratio and target_dz",
                    ));
                }
            };
            let mut constraints = DesignConstraints::with_defaults(objective);
            if let Some(value) = sec.f64_opt("min_feature")? {
                constraints.min_feature = value;
            }
            if let Some(value) = sec.f64_opt("required_stroke")? {
                constraints.required_stroke = value;
            }
            if let Some(value) = sec.f64_opt("safety_factor")? {
                constraints.safety_factor = value;
            }
            if let Some(value) = sec.f64_opt("max_parasitic_fraction")? {
                constraints.max_parasitic_fraction = value;
            }
            constraints
                .validate()
                .map_err(|err| invalid("constraints", err))?;
            Some(constraints)
        }
    };

    Ok(Parsed {
        config: RunConfig {
            geometry,
            material,
            screw,
            optics,
            search,
            constraints,
        },
        warnings,
    })
}

/// `value` pins an axis; `lo:hi:steps` spans it.
fn parse_range(token: &str, line: usize) -> Result<ParamRange<f64>, ConfigError> {
    let parts: Vec<&str> = token.split(':').map(str::trim).collect();
    let number = |part: &str| -> Result<f64, ConfigError> {
        part.parse::<f64>()
            .map_err(|_| syntax(line, format!("expected a number in range, got `{part}`")))
    };
    match parts.as_slice() {
        [single] => Ok(ParamRange::fixed(number(single)?)),
        [lo, hi, steps] => {
            let steps = steps.parse::<usize>().map_err(|_| {
                syntax(
                    line,
                    format!("expected an integer step count, got `{steps}`"),
                )
            })?;
            Ok(ParamRange::new(number(lo)?, number(hi)?, steps))
        }
        _ => Err(syntax(
            line,
            format!("range must be `value` or `lo:hi:steps`, got `{token}`"),
        )),
    }
}

/// Renders a configuration back to text that [`parse_config`] accepts and
/// maps to an equal [`RunConfig`].
///
/// Floats use `{}` formatting, the shortest representation that parses back
/// to the identical value, so the round trip is exact.
pub fn to_ini_string(config: &RunConfig) -> String {
    let mut out = String::new();
    let geom = &config.geometry;
    out.push_str("[geometry]\n");
    out.push_str(&format!("l1 = {}\n", geom.l1));
    out.push_str(&format!("l2 = {}\n", geom.l2));
    out.push_str(&format!("l3 = {}\n", geom.l3));
    out.push_str(&format!("t1 = {}\n", geom.t1));
    out.push_str(&format!("t2 = {}\n", geom.t2));
    out.push_str(&format!("b = {}\n", geom.b));
    out.push_str(&format!(
        "thickness_assignment = {}\n",
        geom.thickness_assignment
    ));

    let material = &config.material;
    out.push_str("\n[material]\n");
    out.push_str(&format!("name = {}\n", material.name));
    out.push_str(&format!("youngs_modulus = {}\n", material.youngs_modulus));
    out.push_str(&format!("bending_strength = {}\n", material.bending_strength));
    out.push_str(&format!("density = {}\n", material.density));

    let screw = &config.screw;
    out.push_str("\n[screw]\n");
    out.push_str(&format!("pitch_mm = {}\n", screw.pitch_mm));
    out.push_str(&format!("min_rotation_deg = {}\n", screw.min_rotation_deg));
    out.push_str(&format!("diameter_mm = {}\n", screw.diameter_mm));

    let optics = &config.optics;
    out.push_str("\n[optics]\n");
    out.push_str(&format!("wavelength_um = {}\n", optics.wavelength_um));
    out.push_str(&format!(
        "numerical_aperture = {}\n",
        optics.numerical_aperture
    ));
    out.push_str(&format!("magnification = {}\n", optics.magnification));

    if let Some(search) = &config.search {
        out.push_str("\n[search]\n");
        let range = |r: &ParamRange<f64>| format!("{}:{}:{}", r.lo, r.hi, r.steps);
        out.push_str(&format!("l1 = {}\n", range(&search.l1)));
        out.push_str(&format!("l2 = {}\n", range(&search.l2)));
        out.push_str(&format!("l3 = {}\n", range(&search.l3)));
        out.push_str(&format!("t1 = {}\n", range(&search.t1)));
        out.push_str(&format!("t2 = {}\n", range(&search.t2)));
        out.push_str(&format!("b = {}\n", range(&search.b)));
        out.push_str(&format!("candidate_cap = {}\n", search.candidate_cap));
        out.push_str(&format!("convention = {}\n", search.convention));
    }

    if let Some(constraints) = &config.constraints {
        out.push_str("\n[constraints]\n");
        out.push_str(&format!("min_feature = {}\n", constraints.min_feature));
        out.push_str(&format!(
            "required_stroke = {}\n",
            constraints.required_stroke
        ));
        out.push_str(&format!("safety_factor = {}\n", constraints.safety_factor));
        out.push_str(&format!(
            "max_parasitic_fraction = {}\n",
            constraints.max_parasitic_fraction
        ));
        match constraints.objective {
            DesignObjective::TargetRatio(target) => {
                out.push_str(&format!("target_ratio = {target}\n"));
            }
            DesignObjective::TargetAccuracy(target) => {
                out.push_str(&format!("target_dz = {target}\n"));
            }
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "[geometry]\nl1 = 25\nl2 = 6\nl3 = 25\nt1 = 3\nt2 = 1.5\nb = 8\n";

    #[test]
    fn minimal_config_takes_stock_defaults() {
        let parsed = parse_config(MINIMAL).unwrap();
        let config = parsed.config;
        assert_eq!(config.geometry, SeesawGeometry::stock(ThicknessAssignment::AsPrinted));
        assert_eq!(config.material, Material::resin());
        assert_eq!(config.screw, ScrewConfig::stock());
        assert_eq!(config.optics, OpticsSpec::stock());
        assert!(config.search.is_none());
        assert!(config.constraints.is_none());
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn empty_file_is_missing_geometry() {
        let err = parse_config("").unwrap_err();
        assert!(err.to_string().contains("missing [geometry]"), "{err}");
    }

    #[test]
    fn negative_dimension_names_the_field() {
        let text = MINIMAL.replace("t1 = 3", "t1 = -3");
        let err = parse_config(&text).unwrap_err();
        assert!(err.to_string().contains("t1"), "{err}");
    }

    #[test]
    fn unknown_key_is_a_line_numbered_syntax_error() {
        let text = format!("{MINIMAL}tt = 4\n");
        match parse_config(&text).unwrap_err() {
            ConfigError::Syntax { line, message } => {
                assert_eq!(line, 8);
                assert!(message.contains("tt"), "{message}");
            }
            other => panic!("expected syntax error, got {other}"),
        }
    }

    #[test]
    fn explicit_material_override_wins_with_a_warning() {
        let text = format!("{MINIMAL}\n[material]\nname = resin\nyoungs_modulus = 2500\n");
        let parsed = parse_config(&text).unwrap();
        assert_eq!(parsed.config.material.youngs_modulus, 2500.0);
        assert_eq!(parsed.config.material.bending_strength, 73.0);
        assert_eq!(parsed.warnings.len(), 1);
        assert!(parsed.warnings[0].contains("youngs_modulus"));
    }

    #[test]
    fn both_targets_rejected() {
        let text =
            format!("{MINIMAL}\n[constraints]\ntarget_ratio = 11\ntarget_dz = 2.5\n");
        let err = parse_config(&text).unwrap_err();
        assert!(err.to_string().contains("exactly one"), "{err}");
    }

    #[test]
    fn emitted_text_parses_back_equal() {
        let text = format!(
            "{MINIMAL}thickness_assignment = swapped\n\n[search]\nl2 = 4:8:17\n\
             convention = kinematic-total\n\n[constraints]\ntarget_ratio = 11\n"
        );
        let first = parse_config(&text).unwrap().config;
        let emitted = to_ini_string(&first);
        let second = parse_config(&emitted).unwrap().config;
        assert_eq!(first, second);
        assert_eq!(emitted, to_ini_string(&second));
    }
}
