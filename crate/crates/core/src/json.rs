//! JSON forms. Every number is written as a `"p/q"` string so that files
//! round-trip bit-exactly.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::lp::{LinearConstraint, Sense};
use crate::polytope::{IntegerHull, Polytope, VPointSet};
use crate::scalar::Scalar;

#[derive(Serialize, Deserialize)]
struct ConstraintJson {
    coeffs: Vec<String>,
    sense: Sense,
    rhs: String,
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    n: usize,
    aux: usize,
    constraints: Vec<ConstraintJson>,
    #[serde(rename = "box")]
    boxed: bool,
}

#[derive(Serialize, Deserialize)]
struct HullJson {
    vertices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    facets: Option<Vec<ConstraintJson>>,
}

fn parse_scalar<S: Scalar>(s: &str) -> Result<S> {
    S::parse_text(s).ok_or_else(|| Error::Parse(format!("not a rational: {s:?}")))
}

impl<S: Scalar> From<&LinearConstraint<S>> for ConstraintJson {
    fn from(c: &LinearConstraint<S>) -> Self {
        ConstraintJson { coeffs: c.coeffs.to_text(), sense: c.sense, rhs: c.rhs.to_text() }
    }
}

impl ConstraintJson {
    fn parse<S: Scalar>(&self) -> Result<LinearConstraint<S>> {
        Ok(LinearConstraint::new(Vector::parse_text(&self.coeffs)?, self.sense, parse_scalar(&self.rhs)?))
    }
}

impl<S: Scalar> Serialize for LinearConstraint<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        ConstraintJson::from(self).serialize(s)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for LinearConstraint<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ConstraintJson::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

impl<S: Scalar> Serialize for Vector<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        self.to_text().serialize(s)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Vector<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        Vector::parse_text(&items).map_err(D::Error::custom)
    }
}

impl<S: Scalar> Serialize for Polytope<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        PolytopeJson {
            n: self.n,
            aux: self.aux,
            constraints: self.constraints.iter().map(ConstraintJson::from).collect(),
            boxed: self.boxed,
        }
        .serialize(s)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Polytope<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolytopeJson::deserialize(d)?;
        let constraints = raw.constraints.iter().map(|c| c.parse()).collect::<Result<Vec<_>>>().map_err(D::Error::custom)?;
        Polytope::lifted(raw.n, raw.aux, constraints, raw.boxed).map_err(D::Error::custom)
    }
}

impl<S: Scalar> Serialize for VPointSet<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        self.points.serialize(s)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for VPointSet<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let points = Vec::<Vector<S>>::deserialize(d)?;
        let dim = points.first().map_or(0, |p| p.dim());
        VPointSet::new(dim, points).map_err(D::Error::custom)
    }
}

impl<S: Scalar> Serialize for IntegerHull<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        HullJson {
            vertices: self.vertices.points.iter().map(|p| p.to_text()).collect(),
            facets: self.facets.as_ref().map(|f| f.iter().map(ConstraintJson::from).collect()),
        }
        .serialize(s)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for IntegerHull<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = HullJson::deserialize(d)?;
        let points = raw.vertices.iter().map(|p| Vector::parse_text(p)).collect::<Result<Vec<_>>>().map_err(D::Error::custom)?;
        let facets = raw
            .facets
            .map(|f| f.iter().map(|c| c.parse()).collect::<Result<Vec<_>>>())
            .transpose()
            .map_err(D::Error::custom)?;
        let dim = points.first().map(|p| p.dim()).or_else(|| facets.as_ref().and_then(|f| f.first().map(|c| c.dim()))).unwrap_or(0);
        Ok(IntegerHull { vertices: VPointSet::new(dim, points).map_err(D::Error::custom)?, facets })
    }
}

pub fn to_string<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn from_str<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}
