//! Angle arguments accept plain radians or multiples of π via a `pi`
//! suffix: `-0.5pi` means −π/2, `pi` means π, `1.5pi` means 3π/2.

pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Some(prefix) = t.strip_suffix("pi").or_else(|| t.strip_suffix("PI")) {
        let factor = match prefix.trim() {
            "" | "+" => 1.0,
            "-" => -1.0,
            p => p
                .parse::<f64>()
                .map_err(|_| format!("invalid angle '{s}': bad multiplier '{p}'"))?,
        };
        Ok(factor * std::f64::consts::PI)
    } else {
        t.parse::<f64>()
            .map_err(|_| format!("invalid angle '{s}': expected radians or a 'pi' suffix"))
    }
}
