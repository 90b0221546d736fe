//! JSON schemas for the public types.
//!
//! Groups may be given by name only, in which case they are looked up in the
//! built-in corpus; serialized output always carries the full table.

use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::burnside::{BurnsideClass, BurnsideError, OmegaElement, OrbitDescriptor};
use crate::fixtures;
use crate::group::{FiniteGroup, GroupError, DEFAULT_ORDER_CAP};
use crate::gset::{GMap, GSet, GSetError};
use crate::scat::{CellError, OneCell, TwoCell, ZeroCell};
use crate::slice::{SliceError, SliceObject};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    GSet(#[from] GSetError),
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Slice(#[from] SliceError),
    #[error(transparent)]
    Burnside(#[from] BurnsideError),
}

/// A type with a JSON representation.
pub trait Json: Sized {
    type Repr: Serialize + DeserializeOwned;
    fn to_repr(&self) -> Self::Repr;
    fn from_repr(repr: Self::Repr) -> Result<Self, JsonError>;
}

pub fn to_value<T: Json>(v: &T) -> serde_json::Value {
    serde_json::to_value(v.to_repr()).expect("representations serialize")
}

pub fn to_string<T: Json>(v: &T) -> String {
    serde_json::to_string_pretty(&v.to_repr()).expect("representations serialize")
}

pub fn from_str<T: Json>(s: &str) -> Result<T, JsonError> {
    T::from_repr(serde_json::from_str(s)?)
}

pub fn from_value<T: Json>(v: serde_json::Value) -> Result<T, JsonError> {
    T::from_repr(serde_json::from_value(v)?)
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct GroupRepr {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
}

impl Json for Arc<FiniteGroup> {
    type Repr = GroupRepr;

    fn to_repr(&self) -> GroupRepr {
        GroupRepr {
            name: self.name().to_string(),
            table: Some(self.table()),
        }
    }

    fn from_repr(repr: GroupRepr) -> Result<Self, JsonError> {
        match repr.table {
            Some(table) => Ok(Arc::new(FiniteGroup::from_table_capped(
                repr.name,
                &table,
                DEFAULT_ORDER_CAP,
            )?)),
            None => fixtures::group(&repr.name).ok_or(JsonError::UnknownGroup(repr.name)),
        }
    }
}

/// `action[g][x] = g·x`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct GSetRepr {
    pub group: GroupRepr,
    pub size: usize,
    pub action: Vec<Vec<usize>>,
}

impl Json for GSet {
    type Repr = GSetRepr;

    fn to_repr(&self) -> GSetRepr {
        GSetRepr {
            group: self.group().to_repr(),
            size: self.size(),
            action: self.table(),
        }
    }

    fn from_repr(repr: GSetRepr) -> Result<Self, JsonError> {
        let group = Arc::<FiniteGroup>::from_repr(repr.group)?;
        Ok(GSet::new(group, repr.size, &repr.action)?)
    }
}

impl Json for ZeroCell {
    type Repr = GSetRepr;

    fn to_repr(&self) -> GSetRepr {
        self.gset().to_repr()
    }

    fn from_repr(repr: GSetRepr) -> Result<Self, JsonError> {
        Ok(ZeroCell::new(GSet::from_repr(repr)?))
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct GMapRepr {
    pub source: GSetRepr,
    pub target: GSetRepr,
    pub image: Vec<usize>,
}

impl Json for GMap {
    type Repr = GMapRepr;

    fn to_repr(&self) -> GMapRepr {
        GMapRepr {
            source: self.source().to_repr(),
            target: self.target().to_repr(),
            image: self.images().to_vec(),
        }
    }

    fn from_repr(repr: GMapRepr) -> Result<Self, JsonError> {
        Ok(GMap::new(
            GSet::from_repr(repr.source)?,
            GSet::from_repr(repr.target)?,
            repr.image,
        )?)
    }
}

/// `theta[x][g] = θ_x(g)`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct OneCellRepr {
    pub source: GSetRepr,
    pub target: GSetRepr,
    pub base: Vec<usize>,
    pub theta: Vec<Vec<usize>>,
}

impl Json for OneCell {
    type Repr = OneCellRepr;

    fn to_repr(&self) -> OneCellRepr {
        OneCellRepr {
            source: self.source().to_repr(),
            target: self.target().to_repr(),
            base: self.base_map().to_vec(),
            theta: self.thetas(),
        }
    }

    fn from_repr(repr: OneCellRepr) -> Result<Self, JsonError> {
        let source = ZeroCell::from_repr(repr.source)?;
        let target = ZeroCell::from_repr(repr.target)?;
        Ok(OneCell::new(source, target, repr.base, repr.theta)?)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TwoCellRepr {
    pub from: OneCellRepr,
    pub to: OneCellRepr,
    pub eps: Vec<usize>,
}

impl Json for TwoCell {
    type Repr = TwoCellRepr;

    fn to_repr(&self) -> TwoCellRepr {
        TwoCellRepr {
            from: self.from().to_repr(),
            to: self.to().to_repr(),
            eps: self.components().to_vec(),
        }
    }

    fn from_repr(repr: TwoCellRepr) -> Result<Self, JsonError> {
        Ok(TwoCell::new(
            OneCell::from_repr(repr.from)?,
            OneCell::from_repr(repr.to)?,
            repr.eps,
        )?)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SliceObjectRepr {
    pub base: GSetRepr,
    pub total: GSetRepr,
    pub structure: Vec<usize>,
}

impl Json for SliceObject {
    type Repr = SliceObjectRepr;

    fn to_repr(&self) -> SliceObjectRepr {
        SliceObjectRepr {
            base: self.base().to_repr(),
            total: self.total().to_repr(),
            structure: self.structure().images().to_vec(),
        }
    }

    fn from_repr(repr: SliceObjectRepr) -> Result<Self, JsonError> {
        let base = ZeroCell::from_repr(repr.base)?;
        Ok(SliceObject::new(
            base,
            GSet::from_repr(repr.total)?,
            repr.structure,
        )?)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct BurnsideClassRepr {
    pub base: GSetRepr,
    pub canonical: Vec<OrbitDescriptor>,
}

impl Json for BurnsideClass {
    type Repr = BurnsideClassRepr;

    fn to_repr(&self) -> BurnsideClassRepr {
        BurnsideClassRepr {
            base: self.base().to_repr(),
            canonical: self.canonical().to_vec(),
        }
    }

    fn from_repr(repr: BurnsideClassRepr) -> Result<Self, JsonError> {
        Ok(BurnsideClass::from_descriptors(
            ZeroCell::from_repr(repr.base)?,
            repr.canonical,
        )?)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TermRepr {
    pub class: OrbitDescriptor,
    pub coeff: i64,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct OmegaRepr {
    pub base: GSetRepr,
    pub terms: Vec<TermRepr>,
}

impl Json for OmegaElement {
    type Repr = OmegaRepr;

    fn to_repr(&self) -> OmegaRepr {
        OmegaRepr {
            base: self.base().to_repr(),
            terms: self
                .coeffs()
                .iter()
                .map(|(d, &c)| TermRepr {
                    class: d.clone(),
                    coeff: c,
                })
                .collect(),
        }
    }

    fn from_repr(repr: OmegaRepr) -> Result<Self, JsonError> {
        let base = ZeroCell::from_repr(repr.base)?;
        Ok(OmegaElement::from_terms(
            base,
            repr.terms.into_iter().map(|t| (t.class, t.coeff)),
        )?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::{objects_up_to, omega_bullet};
    use crate::fixtures::{cell, cells, s3};

    fn round_trip<T: Json + PartialEq + std::fmt::Debug>(v: &T) {
        let s = to_string(v);
        let back: T = from_str(&s).unwrap();
        assert_eq!(&back, v);
        assert_eq!(to_string(&back), s);
    }

    #[test]
    fn corpus_round_trips() {
        for fx in cells() {
            round_trip(&fx.cell);
            round_trip(fx.cell.source());
            for obj in objects_up_to(fx.cell.source(), 3) {
                round_trip(&obj);
            }
        }
        round_trip(&s3());
    }

    #[test]
    fn omega_elements_round_trip() {
        let f = cell("inc_e_c2").unwrap().cell;
        let x = OmegaElement::one(f.source().clone()).scale(-3);
        let y = omega_bullet(&f, &x).unwrap();
        round_trip(&y);
        let v = to_value(&y);
        assert!(v["terms"]
            .as_array()
            .unwrap()
            .iter()
            .all(|t| t["coeff"].is_i64()));
    }

    #[test]
    fn groups_may_be_named() {
        let g: Arc<FiniteGroup> = from_str(r#"{"name": "S3"}"#).unwrap();
        assert_eq!(g, s3());
        assert!(matches!(
            from_str::<Arc<FiniteGroup>>(r#"{"name": "M11"}"#),
            Err(JsonError::UnknownGroup(_))
        ));
        let x: GSet =
            from_str(r#"{"group": {"name": "C2"}, "size": 2, "action": [[0, 1], [1, 0]]}"#)
                .unwrap();
        assert_eq!(x.size(), 2);
        assert!(from_str::<GSet>(
            r#"{"group": {"name": "C2"}, "size": 2, "action": [[0, 1], [1, 1]]}"#
        )
        .is_err());
    }
}
