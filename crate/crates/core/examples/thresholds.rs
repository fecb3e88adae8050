//! Which spectral exponents keep the GHZ advantage as N grows.

use collective_dephasing::metrology::{classify_threshold, Dimension, TemperatureClass};

fn main() -> collective_dephasing::Result<()> {
    for dim in [Dimension::Three, Dimension::One] {
        for temp in [TemperatureClass::Zero, TemperatureClass::Finite] {
            let mut line = format!("{dim:?}/{temp:?}:");
            for s in 0..=8 {
                let r = classify_threshold(s as f64, dim, temp)?;
                let tag = match (r.all_time_suppression, r.zeno_suppression) {
                    (true, _) => "all",
                    (false, true) => "zeno",
                    (false, false) => "-",
                };
                line += &format!(" s={s}:{tag}");
            }
            println!("{line}");
        }
    }
    Ok(())
}
