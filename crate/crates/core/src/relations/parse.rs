//! One-line text form of relation specs, e.g. `newton2 H=cyclic:1/6` or
//! `pencil2 u=(3/4,0,0,5/4) H=zero lambda=1`.

use std::str::FromStr;

use super::{ConeSign, RealSubgroupSpec, RelationSpec};
use crate::error::{Error, Result};
use crate::formats::{key_fields, parse_vector};
use crate::scalar::Scalar;
use crate::spacetime::MetricParams;

const KEYS: [&str; 5] = ["u", "H", "lambda", "c", "sign"];

fn split_fields(line: &str) -> Result<(&str, Vec<(&str, &str)>)> {
    key_fields(line, &KEYS).map_err(|e| Error::MalformedSpec(e.to_string()))
}

fn field<'a>(fields: &[(&str, &'a str)], key: &str) -> Result<&'a str> {
    let mut found = fields.iter().filter(|(k, _)| *k == key);
    let v = found.next().ok_or_else(|| Error::MalformedSpec(format!("missing `{key}=`")))?;
    if found.next().is_some() {
        return Err(Error::MalformedSpec(format!("repeated `{key}=`")));
    }
    Ok(v.1)
}

fn only(fields: &[(&str, &str)], allowed: &[&str]) -> Result<()> {
    match fields.iter().find(|(k, _)| !allowed.contains(k)) {
        Some((k, _)) => Err(Error::MalformedSpec(format!("unexpected field `{k}=`"))),
        None => Ok(()),
    }
}

fn metric(fields: &[(&str, &str)]) -> Result<MetricParams> {
    MetricParams::new(field(fields, "lambda")?.parse()?).map_err(|e| Error::MalformedSpec(e.to_string()))
}

impl FromStr for RealSubgroupSpec {
    type Err = Error;

    /// `zero`, `full`, `cyclic:<S>` or `gen:<S>;<S>;...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "zero" => return Ok(RealSubgroupSpec::Zero),
            "full" => return Ok(RealSubgroupSpec::Full),
            _ => {}
        }
        if let Some(a) = s.strip_prefix("cyclic:") {
            return RealSubgroupSpec::cyclic(a.parse()?);
        }
        if let Some(list) = s.strip_prefix("gen:") {
            let gens = list.split(';').map(str::parse).collect::<Result<Vec<Scalar>>>()?;
            return Ok(RealSubgroupSpec::generated(gens));
        }
        Err(Error::MalformedSpec(format!("unknown subgroup `{s}`")))
    }
}

impl FromStr for RelationSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, f) = split_fields(s)?;
        let spec = match kind {
            "total" | "identity" => {
                only(&f, &[])?;
                if kind == "total" {
                    RelationSpec::Total
                } else {
                    RelationSpec::Identity
                }
            }
            "newton1" | "newton2" => {
                only(&f, &["H"])?;
                let h = field(&f, "H")?.parse()?;
                if kind == "newton1" {
                    RelationSpec::NewtonTypeI(h)
                } else {
                    RelationSpec::NewtonTypeII(h)
                }
            }
            "pencil1" | "pencil2" => {
                only(&f, &["u", "H", "lambda"])?;
                let u = parse_vector(field(&f, "u")?)?;
                let h = field(&f, "H")?.parse()?;
                let m = metric(&f)?;
                if kind == "pencil1" {
                    RelationSpec::PencilTypeI { u, h, m }
                } else {
                    RelationSpec::PencilTypeII { u, h, m }
                }
            }
            "stdsim" => {
                only(&f, &["u", "lambda"])?;
                RelationSpec::StandardSim { u: parse_vector(field(&f, "u")?)?, m: metric(&f)? }
            }
            "halfcone" => {
                only(&f, &["c", "sign"])?;
                let sign = match field(&f, "sign")? {
                    "+" => ConeSign::Future,
                    "-" => ConeSign::Past,
                    other => return Err(Error::MalformedSpec(format!("sign must be + or -, got `{other}`"))),
                };
                RelationSpec::HalfCone { c_hat: field(&f, "c")?.parse()?, sign }
            }
            other => return Err(Error::MalformedSpec(format!("unknown relation kind `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Vec4;

    #[test]
    fn parses_documented_examples() {
        let n: RelationSpec = "newton2 H=cyclic:1/6".parse().unwrap();
        assert_eq!(n, RelationSpec::NewtonTypeII(RealSubgroupSpec::Cyclic(Scalar::frac(1, 6))));
        let p: RelationSpec = "pencil2 u=(3/4,0,0,5/4) H=zero lambda=1".parse().unwrap();
        assert!(matches!(p, RelationSpec::PencilTypeII { h: RealSubgroupSpec::Zero, .. }));
        let c: RelationSpec = "halfcone c=1 sign=+".parse().unwrap();
        assert_eq!(c, RelationSpec::HalfCone { c_hat: Scalar::one(), sign: ConeSign::Future });
        let s: RelationSpec = "stdsim u=(0,0,0,1) lambda=1".parse().unwrap();
        assert_eq!(s, RelationSpec::StandardSim { u: Vec4::basis(3), m: MetricParams::unit() });
        let g: RelationSpec = "newton1 H=gen:1;1*r2".parse().unwrap();
        assert_eq!(
            g,
            RelationSpec::NewtonTypeI(RealSubgroupSpec::Generated(vec![Scalar::one(), Scalar::sqrt2()]))
        );
        let spaced: RelationSpec = "stdsim  u=(0, 0, 0, 1)  lambda=1 + 1*r2".parse().unwrap();
        assert!(matches!(spaced, RelationSpec::StandardSim { .. }));
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "total",
            "identity",
            "newton1 H=full",
            "newton2 H=gen:1/2;1/3",
            "pencil1 u=(0,0,0,2) H=cyclic:1 lambda=3",
            "halfcone c=0 + 1*r2 sign=-",
            "stdsim u=(3/4,0,0,5/4) lambda=1",
        ] {
            let spec: RelationSpec = text.parse().unwrap();
            assert_eq!(spec.to_string().parse::<RelationSpec>().unwrap(), spec, "{text}");
        }
    }

    #[test]
    fn rejects_bad_specs() {
        for text in [
            "",
            "newton3 H=zero",
            "newton2",
            "newton2 H=cyclic:-1",
            "stdsim u=(1,0,0,0) lambda=1",
            "halfcone c=0 sign=+",
            "halfcone c=1 sign=*",
            "total H=zero",
            "stdsim junk u=(0,0,0,1) lambda=1",
        ] {
            assert!(text.parse::<RelationSpec>().is_err(), "{text}");
        }
    }
}
