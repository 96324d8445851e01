//! JSON documents for piecewise functions, space-validated functions,
//! multipliers and distributions.  Rationals travel as canonical `p/q`
//! strings so parsing round-trips bit-exactly.

use serde::{Deserialize, Serialize};

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::numeric::poly::Poly;
use crate::numeric::{rat_from_str, rat_to_string, Rat};
use crate::piecewise::{PiecewiseFn, TailClass};
use crate::spaces::{BVFunction, Multiplier, RegulatedPrimitive};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PiecewiseDoc {
    pub breakpoints: Vec<String>,
    pub pieces: Vec<Vec<String>>,
    pub point_values: Vec<String>,
    pub v_neg_inf: String,
    pub v_pos_inf: String,
    pub tail_class: String,
}

/// Header for functions carrying space membership: `space` is one of
/// "Br", "Bc", "BV", "NBV"; `lambda` and `order` apply to NBV / multipliers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub space: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    #[serde(rename = "fn")]
    pub func: PiecewiseDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionDoc {
    pub order: u32,
    pub continuous: bool,
    pub primitive: PiecewiseDoc,
}

fn rats_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

fn strings_to_rats(v: &[String]) -> Result<Vec<Rat>> {
    v.iter().map(|s| rat_from_str(s)).collect()
}

pub fn piecewise_to_doc(f: &PiecewiseFn) -> PiecewiseDoc {
    PiecewiseDoc {
        breakpoints: rats_to_strings(f.breakpoints()),
        pieces: f.pieces().iter().map(|p| rats_to_strings(p.coeffs())).collect(),
        point_values: rats_to_strings(f.point_values()),
        v_neg_inf: rat_to_string(f.value_neg_inf()),
        v_pos_inf: rat_to_string(f.value_pos_inf()),
        tail_class: match f.tail_class() {
            TailClass::ConstantTails => "constant".into(),
            TailClass::PolynomialTails => "polynomial".into(),
        },
    }
}

pub fn piecewise_from_doc(doc: &PiecewiseDoc) -> Result<PiecewiseFn> {
    let tail_class = match doc.tail_class.as_str() {
        "constant" => TailClass::ConstantTails,
        "polynomial" => TailClass::PolynomialTails,
        other => return Err(Error::Parse(format!("unknown tail_class {other:?}"))),
    };
    let pieces = doc
        .pieces
        .iter()
        .map(|coeffs| Ok(Poly::from_coeffs(strings_to_rats(coeffs)?)))
        .collect::<Result<Vec<_>>>()?;
    let f = PiecewiseFn::new(
        strings_to_rats(&doc.breakpoints)?,
        pieces,
        strings_to_rats(&doc.point_values)?,
        tail_class,
    )?;
    if tail_class == TailClass::ConstantTails {
        for (claimed, actual) in [
            (&doc.v_neg_inf, f.value_neg_inf()),
            (&doc.v_pos_inf, f.value_pos_inf()),
        ] {
            if rat_from_str(claimed)? != *actual {
                return Err(Error::Parse(
                    "tail value does not match the constant tail piece".into(),
                ));
            }
        }
    }
    Ok(f)
}

pub fn piecewise_to_json(f: &PiecewiseFn) -> String {
    serde_json::to_string_pretty(&piecewise_to_doc(f)).expect("serialization cannot fail")
}

pub fn piecewise_from_json(s: &str) -> Result<PiecewiseFn> {
    let doc: PiecewiseDoc =
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    piecewise_from_doc(&doc)
}

pub fn distribution_to_json(d: &Distribution) -> String {
    let doc = DistributionDoc {
        order: d.order(),
        continuous: d.is_continuous(),
        primitive: piecewise_to_doc(d.primitive().as_fn()),
    };
    serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
}

pub fn distribution_from_json(s: &str) -> Result<Distribution> {
    let doc: DistributionDoc =
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.order == 0 {
        return Err(Error::Parse("distribution order must be at least 1".into()));
    }
    let f = piecewise_from_doc(&doc.primitive)?;
    let primitive = RegulatedPrimitive::validate(f)?;
    if doc.continuous != primitive.is_continuous() {
        return Err(Error::Parse(
            "continuity flag does not match the primitive".into(),
        ));
    }
    Ok(Distribution::new(doc.order, primitive))
}

/// Space-validated primitive with its membership header ("Bc" when the
/// function is continuous, "Br" otherwise).
pub fn primitive_to_json(p: &RegulatedPrimitive) -> String {
    let doc = SpaceDoc {
        space: if p.is_continuous() { "Bc".into() } else { "Br".into() },
        lambda: None,
        order: None,
        func: piecewise_to_doc(p.as_fn()),
    };
    serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
}

pub fn primitive_from_json(s: &str) -> Result<RegulatedPrimitive> {
    let doc: SpaceDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let want_continuous = match doc.space.as_str() {
        "Br" => false,
        "Bc" => true,
        other => return Err(Error::Parse(format!("expected Br/Bc function, got {other:?}"))),
    };
    let p = RegulatedPrimitive::validate(piecewise_from_doc(&doc.func)?)?;
    if want_continuous && !p.is_continuous() {
        return Err(Error::Parse("file claims Bc but the function jumps".into()));
    }
    Ok(p)
}

/// Multiplier document: the pair (order, g) with g the bounded-variation
/// kernel; the iterated integral is rebuilt on load.
pub fn multiplier_to_json(m: &Multiplier) -> String {
    let doc = SpaceDoc {
        space: "NBV".into(),
        lambda: m.lambda().map(rat_to_string),
        order: Some(m.order()),
        func: piecewise_to_doc(m.g().as_fn()),
    };
    serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
}

pub fn multiplier_from_json(s: &str) -> Result<Multiplier> {
    let doc: SpaceDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    match doc.space.as_str() {
        "BV" | "NBV" => {}
        other => return Err(Error::Parse(format!("expected BV/NBV function, got {other:?}"))),
    }
    let order = doc.order.unwrap_or(0);
    let f = piecewise_from_doc(&doc.func)?;
    let lambda = doc.lambda.as_deref().map(rat_from_str).transpose()?;
    let g = BVFunction::validate(f, lambda.clone())?;
    Multiplier::new(order, g, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_i};
    use num_traits::Zero;

    #[test]
    fn piecewise_roundtrip() {
        let f = PiecewiseFn::clamped_ramp(rat(-1, 3), rat(5, 2));
        let json = piecewise_to_json(&f);
        let back = piecewise_from_json(&json).unwrap();
        assert_eq!(back, f);
        assert_eq!(piecewise_to_json(&back), json);
    }

    #[test]
    fn heaviside_doc_shape() {
        let json = piecewise_to_json(&PiecewiseFn::heaviside(Rat::zero()));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["breakpoints"][0], "0");
        assert_eq!(v["pieces"][1][0], "1");
        assert_eq!(v["tail_class"], "constant");
        assert_eq!(v["v_pos_inf"], "1");
    }

    #[test]
    fn inconsistent_tail_value_rejected() {
        let f = PiecewiseFn::heaviside(Rat::zero());
        let mut doc = piecewise_to_doc(&f);
        doc.v_pos_inf = "2".into();
        assert!(matches!(piecewise_from_doc(&doc), Err(Error::Parse(_))));
    }

    #[test]
    fn multiplier_roundtrip_rebuilds_the_iterated_integral() {
        let m = Multiplier::from_bv(
            2,
            PiecewiseFn::clamped_ramp(rat_i(-1), rat(1, 2)),
            rat(1, 4),
        )
        .unwrap();
        let json = multiplier_to_json(&m);
        let back = multiplier_from_json(&json).unwrap();
        assert_eq!(back.order(), 2);
        assert_eq!(back.lambda(), m.lambda());
        assert_eq!(back.g().as_fn(), m.g().as_fn());
        assert_eq!(back.h(), m.h());
        // order-0 kernels may be plain BV, without a normalisation header
        let spike = Multiplier::new(
            0,
            BVFunction::plain(PiecewiseFn::point_mass_indicator(rat_i(0))).unwrap(),
            None,
        )
        .unwrap();
        let back = multiplier_from_json(&multiplier_to_json(&spike)).unwrap();
        assert!(back.lambda().is_none());
        assert_eq!(back.g().as_fn(), spike.g().as_fn());
    }

    #[test]
    fn primitive_header_roundtrip() {
        let ramp = RegulatedPrimitive::validate(PiecewiseFn::clamped_ramp(rat_i(0), rat_i(1)))
            .unwrap();
        let json = primitive_to_json(&ramp);
        assert!(json.contains("\"space\": \"Bc\""));
        assert_eq!(primitive_from_json(&json).unwrap(), ramp);

        let step = RegulatedPrimitive::validate(PiecewiseFn::heaviside(Rat::zero())).unwrap();
        let json = primitive_to_json(&step);
        assert!(json.contains("\"space\": \"Br\""));
        // a jumpy function cannot claim the continuous space
        let lied = json.replace("\"Br\"", "\"Bc\"");
        assert!(matches!(primitive_from_json(&lied), Err(Error::Parse(_))));
    }

    #[test]
    fn malformed_json_rejected() {
        assert!(matches!(piecewise_from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(
            piecewise_from_json("{\"breakpoints\":[\"1\",\"0\"],\"pieces\":[[],[],[]],\"point_values\":[\"0\",\"0\"],\"v_neg_inf\":\"0\",\"v_pos_inf\":\"0\",\"tail_class\":\"constant\"}"),
            Err(Error::Parse(_))
        ));
        let _ = rat_i(0);
    }
}
