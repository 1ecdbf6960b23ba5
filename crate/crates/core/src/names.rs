//! Fresh names for new cluster variables.

use std::collections::{HashMap, HashSet};

use crate::ring::RingSpec;

#[derive(Clone, Debug)]
enum Scheme {
    /// Root names are `prefix1, prefix2, ...`; continue the numbering.
    Numbered { prefix: String, next: u64 },
    /// Single letters after the last root letter, then `v1, v2, ...`.
    Letters { start: u8 },
}

/// Assigns one stable name per variable class, keyed by canonical variable
/// key. Root variables keep their own names.
#[derive(Clone, Debug)]
pub struct Namer {
    used: HashSet<String>,
    by_key: HashMap<String, String>,
    scheme: Scheme,
    fallback: u64,
}

fn split_numbered(name: &str) -> Option<(&str, u64)> {
    let pos = name.find(|c: char| c.is_ascii_digit())?;
    let (prefix, digits) = name.split_at(pos);
    if prefix.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    Some((prefix, digits.parse().ok()?))
}

impl Namer {
    pub fn for_root(root: &RingSpec) -> Namer {
        let used: HashSet<String> = root.symbols().cloned().collect();
        let by_key = root.cluster_syms().iter().map(|s| (s.clone(), s.clone())).collect();
        let numbered: Option<Vec<(&str, u64)>> = root.cluster_syms().iter().map(|s| split_numbered(s)).collect();
        let scheme = match numbered {
            Some(parts) if parts.iter().all(|(p, _)| *p == parts[0].0) => Scheme::Numbered {
                prefix: parts[0].0.to_string(),
                next: parts.iter().map(|(_, k)| k).max().unwrap() + 1,
            },
            _ => {
                let last = root
                    .cluster_syms()
                    .iter()
                    .filter(|s| s.len() == 1 && s.as_bytes()[0].is_ascii_lowercase())
                    .map(|s| s.as_bytes()[0])
                    .max()
                    .unwrap_or(b'a' - 1);
                Scheme::Letters { start: last + 1 }
            }
        };
        Namer { used, by_key, scheme, fallback: 1 }
    }

    /// Records an existing association.
    pub fn register(&mut self, key: &str, name: &str) {
        self.used.insert(name.to_string());
        self.by_key.entry(key.to_string()).or_insert_with(|| name.to_string());
    }

    pub fn lookup(&self, key: &str) -> Option<&str> {
        self.by_key.get(key).map(String::as_str)
    }

    /// Name of the class `key`, allocating a fresh one if needed.
    pub fn name_for(&mut self, key: &str) -> String {
        if let Some(n) = self.by_key.get(key) {
            return n.clone();
        }
        let name = self.fresh();
        self.used.insert(name.clone());
        self.by_key.insert(key.to_string(), name.clone());
        name
    }

    fn fresh(&mut self) -> String {
        match &mut self.scheme {
            Scheme::Numbered { prefix, next } => loop {
                let cand = format!("{prefix}{next}");
                *next += 1;
                if !self.used.contains(&cand) {
                    return cand;
                }
            },
            Scheme::Letters { start } => {
                for k in 0..26u8 {
                    let c = b'a' + ((*start).saturating_sub(b'a') + k) % 26;
                    let cand = (c as char).to_string();
                    if !self.used.contains(&cand) {
                        return cand;
                    }
                }
                loop {
                    let cand = format!("v{}", self.fallback);
                    self.fallback += 1;
                    if !self.used.contains(&cand) {
                        return cand;
                    }
                }
            }
        }
    }
}
