//! Browser bindings: each export takes seed file text and returns a
//! printable report, or an error message.

use lpalg::explore::{explore, ExploreLimits};
use lpalg::mutation::{mutate_with, Limits};
use lpalg::poly::IrredBudget;
use lpalg::rank2::rank2_classify;
use lpalg::seed::Seed;
use lpalg::seedfile::parse_seed;
use wasm_bindgen::prelude::*;

const MAX_SEEDS: usize = 2000;
// Infinite seeds grow fast; keep a page from stalling on one.
const EXPLORE_BUDGET: Limits = Limits { max_terms: 100, max_degree: 24 };

fn load(text: &str) -> Result<Seed, String> {
    parse_seed(text, IrredBudget::Heuristic).map_err(|e| e.to_string())
}

/// Mutates along a space- or comma-separated path of names or 1-based slots.
#[wasm_bindgen]
pub fn mutate_seed(text: &str, path: &str) -> Result<String, String> {
    let mut s = load(text)?;
    let limits = Limits::default();
    for item in path.split([',', ' ']).filter(|x| !x.is_empty()) {
        let i = s.slot(item).map_err(|e| e.to_string())?;
        s = mutate_with(&s, i, &limits).map_err(|e| e.to_string())?.0;
    }
    let mut out = format!("{}\n", s.display());
    for i in 0..s.rank() {
        out += &format!("{} = {}\n", s.names()[i], s.var(i).display(s.root()));
    }
    Ok(out)
}

/// Explores the exchange graph and lists its seeds.
#[wasm_bindgen]
pub fn explore_seed(text: &str, max_seeds: usize) -> Result<String, String> {
    let s = load(text)?;
    let limits = ExploreLimits { max_seeds: max_seeds.clamp(1, MAX_SEEDS), max_depth: None, mutation: EXPLORE_BUDGET };
    let g = explore(&s, &limits).map_err(|e| e.to_string())?;
    let mut out = format!("{}\n", g.summary());
    for v in g.vertices() {
        out += &format!("{}\n", v.seed.display());
    }
    Ok(out)
}

/// Names the shape of a rank-two seed.
#[wasm_bindgen]
pub fn classify_rank2(text: &str) -> Result<String, String> {
    let s = load(text)?;
    let r = rank2_classify(&s).map_err(|e| e.to_string())?;
    Ok(match r.shape.seed_count() {
        Some(k) => {
            let found = r.graph.as_ref().map_or(0, |g| g.len());
            format!("(b, c) = ({}, {}): {}, {k} seeds, found {found}", r.b, r.c, r.shape)
        }
        None => format!("(b, c) = ({}, {}): {}", r.b, r.c, r.shape),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const WORKED: &str = "ring { cluster a b c ; }\nseed { a : b + 1 ; b : (a+1)^2 + c^2 ; c : b^2 + b + a^3 + a^2 ; }\n";
    const PENTAGON: &str = "ring { coeff A B C D E ; cluster x y ; }\nseed { x : A*y + B*E ; y : C*x + D*E ; }\n";

    #[test]
    fn mutate_matches_the_worked_example() {
        let out = mutate_seed(WORKED, "c").unwrap();
        assert!(out.starts_with("{(a, b+1), (b, a^2+d^2), (d, a^3+a^2+b^2+b)}\n"), "{out}");
        assert_eq!(mutate_seed(WORKED, "3").unwrap(), out);
        assert_eq!(mutate_seed(WORKED, "c, d").unwrap().lines().next(), Some("{(a, b+1), (b, a^2+c^2+2*a+1), (c, a^3+a^2+b^2+b)}"));
    }

    #[test]
    fn explore_lists_every_seed() {
        let out = explore_seed(PENTAGON, 100).unwrap();
        assert!(out.starts_with("5 seeds"), "{out}");
        assert_eq!(out.lines().count(), 6);
        let out = explore_seed(WORKED, 6).unwrap();
        assert!(out.lines().next().unwrap().ends_with("truncated"), "{out}");
    }

    #[test]
    fn classify_names_the_pentagon() {
        assert_eq!(classify_rank2(PENTAGON).unwrap(), "(b, c) = (1, 1): pentagon, 5 seeds, found 5");
    }

    #[test]
    fn errors_are_reported_as_text() {
        assert!(mutate_seed("ring {", "a").unwrap_err().contains("line"));
        assert!(mutate_seed(WORKED, "q").is_err());
    }
}
