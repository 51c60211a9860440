use std::fmt;

use crate::circuit_ir::Category;
use crate::error::{check_unit, Error, Result};
use crate::gates::{GateNoise, RotationNoise};
use crate::measurement::MeasurementNoise;
use crate::memory_noise::MemoryNoise;
use crate::Real;

/// Keys accepted by the noise configuration format.
pub const NOISE_KEYS: [&str; 15] = [
    "p", "alpha_x", "r_x", "alpha_y", "r_y", "alpha_z", "r_z", "alpha_cx", "r_cx", "d1", "d2", "f", "g",
    "f_meas", "g_meas",
];

/// Every user-supplied error parameter; the default is noiseless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel<T> {
    pub gate: GateNoise<T>,
    pub measure: MeasurementNoise<T>,
    /// `f`, `g` and the thermal population `p` shared with thermal initialization.
    pub memory: MemoryNoise<T>,
    pub f_meas: Option<T>,
    pub g_meas: Option<T>,
}

impl<T: Real> Default for NoiseModel<T> {
    fn default() -> Self {
        NoiseModel {
            gate: GateNoise::default(),
            measure: MeasurementNoise::default(),
            memory: MemoryNoise::default(),
            f_meas: None,
            g_meas: None,
        }
    }
}

impl<T: Real> NoiseModel<T> {
    pub fn noiseless() -> Self {
        Self::default()
    }

    pub fn p(&self) -> T {
        self.memory.p
    }

    /// Memory noise for one partition of the given category.
    pub fn memory_for(&self, category: Category) -> MemoryNoise<T> {
        match category {
            Category::Gate | Category::Barrier => self.memory,
            Category::Measurement | Category::Solo => MemoryNoise {
                f: self.f_meas.unwrap_or(self.memory.f),
                g: self.g_meas.unwrap_or(self.memory.g),
                p: self.memory.p,
            },
        }
    }

    /// Sets one parameter. Besides the file keys, `r` and `alpha` set all four
    /// rotation channels at once.
    pub fn set(&mut self, key: &str, value: T) -> Result<()> {
        let unit = |v: T| check_unit(key, v).map(|_| v);
        let finite = |v: T| {
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Parameter {
                    name: key.to_string(),
                    value: v.as_f64(),
                    range: "finite",
                })
            }
        };
        match key {
            "p" => self.memory.p = unit(value)?,
            "alpha_x" => self.gate.x.mean_offset = finite(value)?,
            "alpha_y" => self.gate.y.mean_offset = finite(value)?,
            "alpha_z" => self.gate.z.mean_offset = finite(value)?,
            "alpha_cx" => self.gate.cx.mean_offset = finite(value)?,
            "r_x" => self.gate.x.damping = unit(value)?,
            "r_y" => self.gate.y.damping = unit(value)?,
            "r_z" => self.gate.z.damping = unit(value)?,
            "r_cx" => self.gate.cx.damping = unit(value)?,
            "r" => {
                let v = unit(value)?;
                for n in self.rotations_mut() {
                    n.damping = v;
                }
            }
            "alpha" => {
                let v = finite(value)?;
                for n in self.rotations_mut() {
                    n.mean_offset = v;
                }
            }
            "d1" => self.measure.d1 = unit(value)?,
            "d2" => self.measure.d2 = unit(value)?,
            "f" => self.memory.f = unit(value)?,
            "g" => self.memory.g = unit(value)?,
            "f_meas" => self.f_meas = Some(unit(value)?),
            "g_meas" => self.g_meas = Some(unit(value)?),
            other => return Err(Error::Parameter {
                name: other.to_string(),
                value: value.as_f64(),
                range: "a known noise key",
            }),
        }
        Ok(())
    }

    fn rotations_mut(&mut self) -> [&mut RotationNoise<T>; 4] {
        let g = &mut self.gate;
        [&mut g.x, &mut g.y, &mut g.z, &mut g.cx]
    }

    pub fn get(&self, key: &str) -> Option<T> {
        Some(match key {
            "p" => self.memory.p,
            "alpha_x" => self.gate.x.mean_offset,
            "alpha_y" => self.gate.y.mean_offset,
            "alpha_z" => self.gate.z.mean_offset,
            "alpha_cx" => self.gate.cx.mean_offset,
            "r_x" => self.gate.x.damping,
            "r_y" => self.gate.y.damping,
            "r_z" => self.gate.z.damping,
            "r_cx" => self.gate.cx.damping,
            "d1" => self.measure.d1,
            "d2" => self.measure.d2,
            "f" => self.memory.f,
            "g" => self.memory.g,
            "f_meas" => self.f_meas.unwrap_or(self.memory.f),
            "g_meas" => self.g_meas.unwrap_or(self.memory.g),
            _ => return None,
        })
    }

    /// Parses `key = value` lines; omitted keys stay noiseless.
    pub fn parse(text: &str) -> Result<Self> {
        let mut model = Self::default();
        let mut seen: Vec<&str> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let stmt = raw.split('#').next().unwrap_or("").trim();
            if stmt.is_empty() {
                continue;
            }
            let Some((key, value)) = stmt.split_once('=') else {
                return Err(Error::Parse { line, msg: format!("expected `key = value`, found `{stmt}`") });
            };
            let key = key.trim();
            let Some(known) = NOISE_KEYS.iter().find(|k| **k == key) else {
                return Err(Error::Parse { line, msg: format!("unknown key `{key}`") });
            };
            if seen.contains(known) {
                return Err(Error::Parse { line, msg: format!("duplicate key `{key}`") });
            }
            seen.push(known);
            let value: f64 = value.trim().parse().map_err(|_| Error::Parse {
                line,
                msg: format!("value of `{key}` is not a number"),
            })?;
            model.set(key, T::lit(value)).map_err(|e| match e {
                Error::Parameter { name, value, range } => Error::Parameter {
                    name: format!("{name} (line {line})"),
                    value,
                    range,
                },
                other => other,
            })?;
        }
        Ok(model)
    }
}

impl<T: Real> fmt::Display for NoiseModel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for key in NOISE_KEYS {
            if (key == "f_meas" && self.f_meas.is_none()) || (key == "g_meas" && self.g_meas.is_none()) {
                continue;
            }
            writeln!(f, "{key} = {}", self.get(key).expect("known key"))?;
        }
        Ok(())
    }
}
