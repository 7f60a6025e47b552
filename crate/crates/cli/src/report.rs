use omltopo::{ElementId, FiniteOml};
use serde::ser::{Serialize, SerializeMap, Serializer};

/// A JSON object whose keys keep insertion order.
#[derive(Clone, Debug, Default)]
pub struct Ordered<V>(pub Vec<(String, V)>);

impl<V: Serialize> Serialize for Ordered<V> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

pub fn names(l: &FiniteOml, ids: &[ElementId]) -> Vec<String> {
    ids.iter().map(|&x| l.name(x).to_owned()).collect()
}

pub fn index_pairs(pairs: &[(ElementId, ElementId)]) -> Vec<[usize; 2]> {
    pairs.iter().map(|(a, b)| [a.index(), b.index()]).collect()
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

/// Minimal CSV quoting for names that contain separators.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}
