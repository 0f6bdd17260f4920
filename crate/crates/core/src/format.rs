//! Fixed float formatting shared by every report writer.
//!
//! Floats are always printed with 17 significant digits in scientific
//! notation, so identical runs produce byte-identical output.

use serde::Serializer;
use serde_json::value::RawValue;

pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// `serialize_with` helper writing an `f64` as a 17-digit JSON number
/// (`null` when not finite).
pub fn f17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    let text = if x.is_finite() { fmt17(*x) } else { "null".to_string() };
    let raw = RawValue::from_string(text).map_err(serde::ser::Error::custom)?;
    s.serialize_some(&raw)
}

pub fn f17_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => f17(v, s),
        None => s.serialize_none(),
    }
}

pub fn f17_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let items: Vec<String> = xs
        .iter()
        .map(|x| if x.is_finite() { fmt17(*x) } else { "null".into() })
        .collect();
    let raw = RawValue::from_string(format!("[{}]", items.join(","))).map_err(serde::ser::Error::custom)?;
    s.serialize_some(&raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(serde::Serialize)]
    struct Row {
        #[serde(serialize_with = "f17")]
        x: f64,
        #[serde(serialize_with = "f17_vec")]
        v: Vec<f64>,
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(0.2), "2.0000000000000001e-1");
        let json = serde_json::to_string(&Row {
            x: 1.5,
            v: vec![1.0, f64::NAN],
        })
        .unwrap();
        assert_eq!(json, r#"{"x":1.5000000000000000e0,"v":[1.0000000000000000e0,null]}"#);
        let back: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(back["x"].as_f64(), Some(1.5));
    }
}
