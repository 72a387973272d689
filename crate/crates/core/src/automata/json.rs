//! `{"states": n, "alphabet": [...], "initial": i | [i..], "finals": [...],
//!   "delta": [[src, letter, dst], ...]}`

use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Dfa, Nfa};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Initial {
    One(usize),
    Many(Vec<usize>),
}

#[derive(Serialize, Deserialize)]
struct AutomatonJson {
    states: usize,
    alphabet: Vec<String>,
    initial: Initial,
    finals: Vec<usize>,
    delta: Vec<(usize, String, usize)>,
}

impl AutomatonJson {
    fn letter(&self, name: &str) -> Result<usize> {
        self.alphabet
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::invalid(format!("letter {name:?} is not in the alphabet")))
    }
}

impl TryFrom<AutomatonJson> for Nfa {
    type Error = Error;

    fn try_from(raw: AutomatonJson) -> Result<Self> {
        let transitions = raw
            .delta
            .iter()
            .map(|(src, name, dst)| Ok((*src, raw.letter(name)?, *dst)))
            .collect::<Result<Vec<_>>>()?;
        let initials = match raw.initial {
            Initial::One(i) => BTreeSet::from([i]),
            Initial::Many(ref v) => v.iter().copied().collect(),
        };
        Nfa::new(
            raw.states,
            raw.alphabet.clone(),
            initials,
            raw.finals.iter().copied().collect(),
            transitions,
        )
    }
}

impl TryFrom<AutomatonJson> for Dfa {
    type Error = Error;

    fn try_from(raw: AutomatonJson) -> Result<Self> {
        let initial = match raw.initial {
            Initial::One(i) => i,
            Initial::Many(ref v) if v.len() == 1 => v[0],
            Initial::Many(_) => return Err(Error::invalid("a DFA has exactly one initial state")),
        };
        let mut delta = vec![vec![None; raw.alphabet.len()]; raw.states];
        for (src, name, dst) in &raw.delta {
            let a = raw.letter(name)?;
            let slot = delta
                .get_mut(*src)
                .ok_or_else(|| Error::invalid(format!("source state {src} out of range")))?;
            if slot[a].replace(*dst).is_some_and(|old| old != *dst) {
                return Err(Error::invalid(format!(
                    "state {src} has two targets on {name:?}"
                )));
            }
        }
        let delta = delta
            .into_iter()
            .enumerate()
            .map(|(q, row)| {
                row.into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::invalid(format!("state {q} is missing a transition")))
            })
            .collect::<Result<Vec<_>>>()?;
        Dfa::new(
            raw.alphabet,
            initial,
            raw.finals.into_iter().collect(),
            delta,
        )
    }
}

impl From<&Dfa> for AutomatonJson {
    fn from(d: &Dfa) -> Self {
        let mut delta = Vec::new();
        for (q, row) in d.delta.iter().enumerate() {
            for (a, &t) in row.iter().enumerate() {
                delta.push((q, d.alphabet[a].clone(), t));
            }
        }
        AutomatonJson {
            states: d.state_count(),
            alphabet: d.alphabet.clone(),
            initial: Initial::One(d.initial),
            finals: d.finals.iter().copied().collect(),
            delta,
        }
    }
}

impl From<&Nfa> for AutomatonJson {
    fn from(n: &Nfa) -> Self {
        AutomatonJson {
            states: n.state_count(),
            alphabet: n.alphabet.clone(),
            initial: Initial::Many(n.initials.iter().copied().collect()),
            finals: n.finals.iter().copied().collect(),
            delta: n
                .transitions()
                .map(|(q, a, t)| (q, n.alphabet[a].clone(), t))
                .collect(),
        }
    }
}

impl Serialize for Dfa {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        AutomatonJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Dfa {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = AutomatonJson::deserialize(deserializer)?;
        Dfa::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Nfa {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        AutomatonJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Nfa {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = AutomatonJson::deserialize(deserializer)?;
        Nfa::try_from(raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dfa_json_shape() {
        let text = r#"{"states":2,"alphabet":["a"],"initial":0,"finals":[1],
                      "delta":[[0,"a",1],[1,"a",0]]}"#;
        let d: Dfa = serde_json::from_str(text).unwrap();
        assert!(d.accepts(&[0]));
        assert!(!d.accepts(&[0, 0]));
        let back = serde_json::to_value(&d).unwrap();
        assert_eq!(back["initial"], 0);
        assert_eq!(back["delta"][1], serde_json::json!([1, "a", 0]));
    }

    #[test]
    fn nfa_json_accepts_initial_list() {
        let text = r#"{"states":2,"alphabet":["a","b"],"initial":[0,1],"finals":[1],
                      "delta":[[0,"a",1],[0,"a",0]]}"#;
        let n: Nfa = serde_json::from_str(text).unwrap();
        assert_eq!(n.successors(0, 0), &[0, 1]);
        assert!(n.accepts(&[]));
        let again: Nfa = serde_json::from_value(serde_json::to_value(&n).unwrap()).unwrap();
        assert_eq!(again, n);
    }

    #[test]
    fn partial_dfa_json_is_rejected() {
        let text = r#"{"states":2,"alphabet":["a"],"initial":0,"finals":[],"delta":[[0,"a",1]]}"#;
        assert!(serde_json::from_str::<Dfa>(text).is_err());
        let unknown =
            r#"{"states":1,"alphabet":["a"],"initial":0,"finals":[],"delta":[[0,"z",0]]}"#;
        assert!(serde_json::from_str::<Dfa>(unknown).is_err());
    }
}
