use crate::args::{PosetArgs, VariantArg};
use lieposet::poset::{PosetJson, SignedPosetJson};
use lieposet::{LiePosetAlgebra, Poset, SignedPoset, Variant};
use serde_json::Value;

pub type CliResult<T> = std::result::Result<T, String>;

pub fn read_json(src: &str) -> CliResult<Value> {
    let text = if src.trim_start().starts_with('{') || src.trim_start().starts_with('[') {
        src.to_string()
    } else {
        std::fs::read_to_string(src).map_err(|e| format!("cannot read {src}: {e}"))?
    };
    serde_json::from_str(&text).map_err(|e| format!("malformed JSON: {e}"))
}

pub enum Loaded {
    Plain(Poset),
    Signed(SignedPoset),
}

impl Loaded {
    /// The ordinary poset (for signed input, on all `2n` labels).
    pub fn poset(&self) -> Poset {
        match self {
            Loaded::Plain(p) => p.clone(),
            Loaded::Signed(s) => s.underlying(),
        }
    }
}

fn is_signed(v: &Value) -> bool {
    let variant_bcd = matches!(v.get("variant").and_then(Value::as_str), Some("B" | "C" | "D"));
    let negative = v
        .get("covers")
        .and_then(Value::as_array)
        .is_some_and(|cs| cs.iter().flat_map(|c| c.as_array().into_iter().flatten()).any(|x| x.as_i64().is_some_and(|x| x < 0)));
    variant_bcd || negative
}

pub fn load_poset(src: &str) -> CliResult<Loaded> {
    let v = read_json(src)?;
    if is_signed(&v) {
        let j: SignedPosetJson =
            serde_json::from_value(v).map_err(|e| format!("invalid signed poset: {e}"))?;
        SignedPoset::from_json(&j).map(Loaded::Signed).map_err(|e| format!("invalid signed poset: {e}"))
    } else {
        let j: PosetJson = serde_json::from_value(v).map_err(|e| format!("invalid poset: {e}"))?;
        Poset::from_json(&j).map(Loaded::Plain).map_err(|e| format!("invalid poset: {e}"))
    }
}

fn file_variant(src: &str) -> Option<String> {
    read_json(src).ok()?.get("variant")?.as_str().map(str::to_owned)
}

pub fn resolve_variant(a: &PosetArgs) -> CliResult<VariantArg> {
    if let Some(v) = a.variant {
        return Ok(v);
    }
    match file_variant(&a.poset).as_deref() {
        None | Some("A") => Ok(VariantArg::A),
        Some("B") => Ok(VariantArg::B),
        Some("C") => Ok(VariantArg::C),
        Some("D") => Ok(VariantArg::D),
        Some(other) => Err(format!("unknown variant {other:?} (expected A, B, C or D)")),
    }
}

pub fn build_algebra(a: &PosetArgs) -> CliResult<LiePosetAlgebra> {
    let loaded = load_poset(&a.poset)?;
    let variant = resolve_variant(a)?;
    match variant {
        VariantArg::A => Ok(LiePosetAlgebra::type_a(&loaded.poset(), !a.gl)),
        v => {
            if a.gl {
                return Err("--gl applies to type A only".into());
            }
            let Loaded::Signed(s) = loaded else {
                return Err("variants B, C and D need a signed poset with labels ±1..±n".into());
            };
            let variant = match v {
                VariantArg::B => Variant::B,
                VariantArg::C => Variant::C,
                _ => Variant::D,
            };
            LiePosetAlgebra::type_bcd(&s, variant).map_err(|e| e.to_string())
        }
    }
}
