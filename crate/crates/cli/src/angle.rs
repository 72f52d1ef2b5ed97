//! Angle arguments: plain radians or multiples of pi such as `pi/4`, `2pi/9`, `0.5*pi`.

use std::f64::consts::PI;

pub fn parse(text: &str) -> Result<f64, String> {
    let t = text.trim().to_ascii_lowercase().replace(' ', "");
    let value = match t.find("pi") {
        None => t.parse::<f64>().map_err(|e| e.to_string())?,
        Some(at) => {
            let coefficient = t[..at].trim_end_matches('*');
            let rest = &t[at + 2..];
            let c = if coefficient.is_empty() {
                1.0
            } else {
                coefficient.parse::<f64>().map_err(|e| e.to_string())?
            };
            let d = match rest.strip_prefix('/') {
                None if rest.is_empty() => 1.0,
                None => return Err(format!("cannot read angle '{text}'")),
                Some(den) => den.parse::<f64>().map_err(|e| e.to_string())?,
            };
            c * PI / d
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("angle '{text}' is not finite"))
    }
}
