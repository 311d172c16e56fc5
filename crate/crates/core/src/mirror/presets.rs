use std::collections::BTreeMap;

use super::{LGModel, MirrorError};
use crate::C64;

pub const PRESETS: &[&str] = &[
    "delpezzo4",
    "delpezzo4_deformed",
    "genus2",
    "hyperelliptic",
    "quadrics_x4",
    "cubic_quadric_S",
    "weighted_N",
];

fn take(
    preset: &str,
    params: &BTreeMap<String, C64>,
    names: &[&str],
) -> Result<BTreeMap<String, C64>, MirrorError> {
    let mut out = BTreeMap::new();
    for &n in names {
        let v = params.get(n).ok_or_else(|| MirrorError::MissingParameter {
            preset: preset.to_string(),
            name: n.to_string(),
        })?;
        out.insert(n.to_string(), *v);
    }
    Ok(out)
}

/// The systems as written down for each example. `hyperelliptic` reads the
/// integer `k` from `params` and does not store it.
pub fn builtin_model(name: &str, params: &BTreeMap<String, C64>) -> Result<LGModel, MirrorError> {
    let x5 = ["x1", "x2", "x3", "x4", "x5"];
    let x6 = ["x1", "x2", "x3", "x4", "x5", "x6"];
    match name {
        "delpezzo4" => LGModel::from_strings(
            &x5,
            &[],
            take(name, params, &["A"])?,
            &["x1*x2*x3*x4*x5 = A", "x1 + x2 = -1", "x3 + x4 = -1"],
            "x5",
            &[("x2", 1), ("x4", 2), ("x5", 0)],
        ),
        // w' = t(t-e)u(u-e)/((t+1)(u+1)), carried by an auxiliary z.
        "delpezzo4_deformed" => LGModel::from_strings(
            &["t", "u", "z"],
            &["t", "u", "z"],
            take(name, params, &["e"])?,
            &["z*(t+1)*(u+1) = t*(t-e)*u*(u-e)"],
            "z",
            &[("z", 0)],
        ),
        "genus2" => genus_curve(name, params, 3),
        "hyperelliptic" => {
            let k = params.get("k").ok_or_else(|| MirrorError::MissingParameter {
                preset: name.to_string(),
                name: "k".to_string(),
            })?;
            if k.im != 0.0 || k.re.fract() != 0.0 || k.re < 1.0 || k.re > 64.0 {
                return Err(MirrorError::InvalidParameter {
                    name: "k".into(),
                    reason: format!("expected an integer in 1..=64, got {k}"),
                });
            }
            genus_curve(name, params, k.re as u32)
        }
        "quadrics_x4" => LGModel::from_strings(
            &x6,
            &[],
            BTreeMap::new(),
            &["x1*x2*x3*x4*x5*x6 = 1", "x1 + x2 = -1", "x3 + x4 = -1"],
            "x5 + x6",
            &[("x2", 1), ("x4", 2), ("x6", 0)],
        ),
        "cubic_quadric_S" => LGModel::from_strings(
            &x6,
            &[],
            take(name, params, &["A"])?,
            &["x1 + x2 = -1", "x3 + x4 + x5 = -1", "x1*x2*x3*x4*x5*x6 = A"],
            "x6",
            &[("x2", 0), ("x5", 1), ("x6", 2)],
        ),
        "weighted_N" => LGModel::from_strings(
            &["u1", "u2", "u3", "u4", "u5", "v"],
            &["v"],
            take(name, params, &["a"])?,
            &["u1*u2*u3*u4^2*u5^3 = a*v^6"],
            "u1 + u2 + u3 + u4 + u5 + v",
            &[("u1", 0)],
        ),
        _ => Err(MirrorError::UnknownPreset(name.to_string())),
    }
}

fn genus_curve(name: &str, params: &BTreeMap<String, C64>, k: u32) -> Result<LGModel, MirrorError> {
    let rel = format!("x1*x2 = a1*x3^{k}");
    LGModel::from_strings(
        &["x1", "x2", "x3", "x4", "x5"],
        &[],
        take(name, params, &["a1", "a2"])?,
        &[&rel, "x4*x5 = a2*x3^2"],
        "x1 + x2 + x3 + x4 + x5",
        &[("x2", 0), ("x5", 1)],
    )
}
