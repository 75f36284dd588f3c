//! Resolution of `--map` arguments: either a JSON file describing a
//! rational self-map of the projective line, or a built-in name.
//!
//! File format: `{"num": ["c0", "c1", ...], "den": [...]}` with exact
//! decimal-string coefficients in ascending degree.
//!
//! Built-ins:
//! - `builtin:j5`: the degree-6 j-map t -> (t^2+250t+3125)^3 / t^5.
//! - `builtin:torsion-j`: the two constant maps at the finite torsion
//!   j-values -102400/3 and 20480/243 (the pole image is handled by the
//!   obstruction engine separately).

use crate::format::poly_from_json;
use decic_core::arith::{ratio, Poly, Rat, RationalMapP1, UniPoly};
use decic_core::modular::j_map_x05;
use std::fs;

/// A named map, as resolved from a `--map` argument. One argument may
/// expand to several maps (`builtin:torsion-j`).
pub struct NamedMap {
    pub name: String,
    pub map: RationalMapP1<Rat>,
}

/// Resolve a `--map` argument.
pub fn load_maps(spec: &str) -> Result<Vec<NamedMap>, String> {
    match spec {
        "builtin:j5" => Ok(vec![NamedMap {
            name: spec.into(),
            map: j_map_x05(),
        }]),
        "builtin:torsion-j" => Ok([ratio(-102400, 3), ratio(20480, 243)]
            .into_iter()
            .map(|j| NamedMap {
                name: format!("builtin:torsion-j(j={})", crate::format::rat_str(&j)),
                map: RationalMapP1::new(Poly::constant(j), UniPoly::from_ints(&[1]))
                    .expect("constant map"),
            })
            .collect()),
        other if other.starts_with("builtin:") => Err(format!(
            "unknown builtin map `{other}` (available: builtin:j5, builtin:torsion-j)"
        )),
        path => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read map file `{path}`: {e}"))?;
            let v: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| format!("map file `{path}` is not valid JSON: {e}"))?;
            let num = poly_from_json(
                v.get("num")
                    .ok_or_else(|| format!("map file `{path}` is missing `num`"))?,
            )?;
            let den = poly_from_json(
                v.get("den")
                    .ok_or_else(|| format!("map file `{path}` is missing `den`"))?,
            )?;
            let map = RationalMapP1::new(num, den)
                .map_err(|e| format!("map file `{path}` does not define a map: {e}"))?;
            Ok(vec![NamedMap {
                name: path.into(),
                map,
            }])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_resolve() {
        let j5 = load_maps("builtin:j5").unwrap();
        assert_eq!(j5.len(), 1);
        assert_eq!(j5[0].map.num().degree(), Some(6));
        let tj = load_maps("builtin:torsion-j").unwrap();
        assert_eq!(tj.len(), 2);
        assert!(tj.iter().all(|m| m.map.num().degree() == Some(0)));
        assert!(load_maps("builtin:nope").is_err());
        assert!(load_maps("/no/such/file.json").is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("map.json");
        std::fs::write(&path, r#"{"num": ["0", "1"], "den": ["1"]}"#).unwrap();
        let m = load_maps(path.to_str().unwrap()).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].map.num().degree(), Some(1));
    }
}
