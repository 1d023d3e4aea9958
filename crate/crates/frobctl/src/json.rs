//! JSON and CSV encodings of characters, multiplicity tables and path models.

use std::io::Write;

use frobenius_core::lspaths::Segment;
use frobenius_core::{CartanType, Character, LsPath, MultiplicityTable, Weight};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid character data: {0}")]
    Invalid(#[from] frobenius_core::Error),
    #[error("bad multiplicity {0:?}")]
    BadInteger(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// An integer that is a JSON number when it fits in `i64`, a decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(n.to_string()),
        }
    }
}

impl TryFrom<&JsonInt> for BigInt {
    type Error = FormatError;

    fn try_from(n: &JsonInt) -> Result<Self, FormatError> {
        match n {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.parse().map_err(|_| FormatError::BadInteger(s.clone())),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CharacterJson {
    #[serde(rename = "type")]
    ty: String,
    weights: Vec<(Vec<i32>, JsonInt)>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TableRow {
    pub mu: Vec<i32>,
    pub mult: JsonInt,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TableJson {
    #[serde(rename = "type")]
    pub ty: String,
    pub p: u32,
    pub lambda: Vec<i32>,
    pub rows: Vec<TableRow>,
}

/// Weights ascending lexicographically.
pub fn character_to_json(c: &Character) -> String {
    let doc = CharacterJson {
        ty: c.cartan_type().to_string(),
        weights: c.iter().map(|(w, m)| (w.coords().to_vec(), m.into())).collect(),
    };
    serde_json::to_string(&doc).expect("character serialization is infallible")
}

pub fn character_from_json(s: &str) -> Result<Character, FormatError> {
    let doc: CharacterJson = serde_json::from_str(s)?;
    let ty: CartanType = doc.ty.parse()?;
    let mut pairs = Vec::with_capacity(doc.weights.len());
    for (coords, m) in &doc.weights {
        let w = Weight::new(coords)?;
        w.check_rank(ty.rank())?;
        pairs.push((w, BigInt::try_from(m)?));
    }
    Ok(Character::from_pairs(ty, pairs)?)
}

/// Rows descending lexicographically, highest `μ` first.
pub fn table_document(t: &MultiplicityTable) -> TableJson {
    TableJson {
        ty: t.cartan_type.to_string(),
        p: t.p.get(),
        lambda: t.lambda.coords().to_vec(),
        rows: t.rows.iter().rev().map(|(mu, m)| TableRow { mu: mu.coords().to_vec(), mult: m.into() }).collect(),
    }
}

pub fn table_to_json(t: &MultiplicityTable) -> String {
    serde_json::to_string(&table_document(t)).expect("table serialization is infallible")
}

/// `mu_coords,mult`, with coordinates joined by spaces inside the first field.
pub fn rows_to_csv<'a, W: Write>(rows: impl Iterator<Item = (&'a Weight, &'a BigInt)>, out: W) -> Result<(), FormatError> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["mu_coords", "mult"])?;
    for (mu, m) in rows {
        let coords: Vec<String> = mu.coords().iter().map(i32::to_string).collect();
        wtr.write_record([coords.join(" "), m.to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn table_to_csv<W: Write>(t: &MultiplicityTable, out: W) -> Result<(), FormatError> {
    rows_to_csv(t.rows.iter().rev(), out)
}

fn segment_json(s: &Segment) -> (Vec<i32>, i64, i64) {
    (s.direction.coords().to_vec(), *s.length.numer(), *s.length.denom())
}

/// One array per path, one `[direction, numerator, denominator]` triple per segment.
pub fn paths_to_json(paths: &[LsPath]) -> String {
    let doc: Vec<Vec<(Vec<i32>, i64, i64)>> =
        paths.iter().map(|p| p.segments().iter().map(segment_json).collect()).collect();
    serde_json::to_string(&doc).expect("path serialization is infallible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use frobenius_core::Prime;
    use std::collections::BTreeMap;

    fn w(c: &[i32]) -> Weight {
        Weight::from_slice(c)
    }

    #[test]
    fn character_round_trip() {
        let ty: CartanType = "A2".parse().unwrap();
        let huge: BigInt = BigInt::from(i64::MAX) * 1000;
        let c = Character::from_pairs(ty, [(w(&[1, 0]), BigInt::from(3)), (w(&[-1, 1]), huge.clone())]).unwrap();
        let s = character_to_json(&c);
        assert_eq!(s, format!(r#"{{"type":"A2","weights":[[[-1,1],"{huge}"],[[1,0],3]]}}"#));
        assert_eq!(character_from_json(&s).unwrap(), c);
    }

    #[test]
    fn rejects_wrong_rank() {
        let err = character_from_json(r#"{"type":"A2","weights":[[[1],1]]}"#).unwrap_err();
        assert!(matches!(err, FormatError::Invalid(_)));
        assert!(character_from_json("{").is_err());
        assert!(character_from_json(r#"{"type":"A1","weights":[[[1],"x"]]}"#).is_err());
    }

    #[test]
    fn table_layout() {
        let rows: BTreeMap<_, _> = [(w(&[1, 0]), BigInt::from(2)), (w(&[0, 0]), BigInt::from(2))].into();
        let t = MultiplicityTable {
            cartan_type: "G2".parse().unwrap(),
            p: Prime::new(2).unwrap(),
            lambda: w(&[1, 1]),
            rows,
            contracted_dimension: BigInt::from(16),
        };
        assert_eq!(
            table_to_json(&t),
            r#"{"type":"G2","p":2,"lambda":[1,1],"rows":[{"mu":[1,0],"mult":2},{"mu":[0,0],"mult":2}]}"#
        );
        let mut buf = Vec::new();
        table_to_csv(&t, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "mu_coords,mult\n1 0,2\n0 0,2\n");
    }
}
