//! Completion of path-algebra relations into a confluent rewriting system
//! (a reduced noncommutative Gröbner basis for the degree-lexicographic order)
//! and enumeration of the resulting normal words.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::{Path, PathPoly, Quiver};

/// Default bound on the length of rewriting tips and normal words.
pub const DEFAULT_CEILING: usize = 512;
pub const CEILING_ENV: &str = "TAMESYM_TRUNCATION_CEILING";

/// Upper bound on the number of normal words before giving up.
const MAX_NORMAL_WORDS: usize = 200_000;

pub fn ceiling_from_env() -> usize {
    std::env::var(CEILING_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or(DEFAULT_CEILING)
}

/// `tip -> rhs`, where every term of `rhs` is smaller than `tip`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub tip: Path,
    pub rhs: PathPoly,
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    field: Field,
    rules: Vec<Option<Rule>>,
    index: HashMap<Vec<usize>, usize>,
    tip_lens: BTreeSet<usize>,
}

impl RewriteSystem {
    fn empty(field: &Field) -> RewriteSystem {
        RewriteSystem {
            field: field.clone(),
            rules: Vec::new(),
            index: HashMap::new(),
            tip_lens: BTreeSet::new(),
        }
    }

    /// Runs overlap completion on the relations. Overlaps are processed in
    /// order of the length of the overlapping word, which keeps the procedure
    /// fair; tips longer than `ceiling` abort with a truncation error.
    pub fn complete(field: &Field, relations: &[PathPoly], ceiling: usize) -> Result<RewriteSystem> {
        let mut sys = RewriteSystem::empty(field);
        let mut pending: VecDeque<PathPoly> = relations.iter().cloned().collect();
        let mut pairs: BinaryHeap<Reverse<(usize, usize, usize, usize, usize)>> = BinaryHeap::new();
        let mut seq = 0usize;
        loop {
            let candidate = if let Some(p) = pending.pop_front() {
                p
            } else if let Some(Reverse((_, _, a, b, o))) = pairs.pop() {
                match (&sys.rules[a], &sys.rules[b]) {
                    (Some(ra), Some(rb)) => sys.s_poly(ra, rb, o),
                    _ => continue,
                }
            } else {
                break;
            };
            let reduced = sys.reduce(candidate);
            if reduced.is_zero() {
                continue;
            }
            let id = sys.insert(reduced, ceiling, &mut pending)?;
            let alive: Vec<usize> = (0..sys.rules.len()).filter(|&i| sys.rules[i].is_some()).collect();
            for other in alive {
                for (a, b) in [(id, other), (other, id)] {
                    if a == b && other != id {
                        continue;
                    }
                    let ta = &sys.rules[a].as_ref().unwrap().tip.arrows;
                    let tb = &sys.rules[b].as_ref().unwrap().tip.arrows;
                    for o in 1..ta.len().min(tb.len()) {
                        if ta[ta.len() - o..] == tb[..o] {
                            pairs.push(Reverse((ta.len() + tb.len() - o, seq, a, b, o)));
                            seq += 1;
                        }
                    }
                    if a == b {
                        break;
                    }
                }
            }
        }
        sys.interreduce();
        Ok(sys)
    }

    fn insert(&mut self, poly: PathPoly, ceiling: usize, pending: &mut VecDeque<PathPoly>) -> Result<usize> {
        let f = self.field.clone();
        let (tip, lc) = {
            let (t, c) = poly.leading().unwrap();
            (t.clone(), c.clone())
        };
        if tip.is_trivial() {
            return Err(Error::Consistency(format!(
                "relations force the idempotent e{} to vanish",
                tip.start
            )));
        }
        if tip.len() > ceiling {
            return Err(Error::Truncation(format!(
                "rewriting produced a relation of length {} beyond the ceiling {ceiling}",
                tip.len()
            )));
        }
        let mut rhs = poly;
        rhs.pop_leading();
        let rhs = rhs.scale(&f, &f.neg(&f.inv(&lc)?));
        for i in 0..self.rules.len() {
            let contains = self.rules[i]
                .as_ref()
                .is_some_and(|r| contains_word(&r.tip.arrows, &tip.arrows));
            if contains {
                let old = self.rules[i].take().unwrap();
                self.index.remove(&old.tip.arrows);
                let mut back = old.rhs.scale(&f, &f.from_i64(-1));
                back.add_term(&f, old.tip, f.one());
                pending.push_back(back);
            }
        }
        let id = self.rules.len();
        self.index.insert(tip.arrows.clone(), id);
        self.tip_lens.insert(tip.len());
        self.rules.push(Some(Rule { tip, rhs }));
        Ok(id)
    }

    fn s_poly(&self, ra: &Rule, rb: &Rule, o: usize) -> PathPoly {
        let f = &self.field;
        let ta = &ra.tip;
        let tb = &rb.tip;
        let v = Path {
            start: ta.end,
            end: tb.end,
            arrows: tb.arrows[o..].to_vec(),
        };
        let u = Path {
            start: ta.start,
            end: tb.start,
            arrows: ta.arrows[..ta.len() - o].to_vec(),
        };
        let mut s = ra.rhs.sandwich(f, &Path::trivial(ta.start), &v);
        s.add_scaled(f, &rb.rhs.sandwich(f, &u, &Path::trivial(tb.end)), &f.from_i64(-1));
        s
    }

    fn interreduce(&mut self) {
        for i in 0..self.rules.len() {
            if let Some(rule) = self.rules[i].take() {
                let rhs = self.reduce(rule.rhs);
                self.rules[i] = Some(Rule { tip: rule.tip, rhs });
            }
        }
        let rules: Vec<Rule> = self.rules.drain(..).flatten().collect();
        self.index.clear();
        self.tip_lens.clear();
        for (i, r) in rules.iter().enumerate() {
            self.index.insert(r.tip.arrows.clone(), i);
            self.tip_lens.insert(r.tip.len());
        }
        self.rules = rules.into_iter().map(Some).collect();
    }

    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().flatten()
    }

    /// Position and rule of the leftmost tip occurring in `word`.
    fn find_tip(&self, word: &[usize]) -> Option<(usize, usize)> {
        for pos in 0..word.len() {
            for &len in &self.tip_lens {
                if pos + len > word.len() {
                    break;
                }
                if let Some(&id) = self.index.get(&word[pos..pos + len]) {
                    if self.rules[id].is_some() {
                        return Some((pos, id));
                    }
                }
            }
        }
        None
    }

    /// Whether some tip is a suffix of `word`.
    fn has_tip_suffix(&self, word: &[usize]) -> bool {
        self.tip_lens.iter().any(|&len| {
            len <= word.len() && self.index.contains_key(&word[word.len() - len..])
        })
    }

    pub fn is_normal(&self, word: &[usize]) -> bool {
        self.find_tip(word).is_none()
    }

    /// Normal form: a combination of normal words congruent to `poly`.
    pub fn reduce(&self, mut poly: PathPoly) -> PathPoly {
        let f = &self.field;
        let mut out = PathPoly::zero();
        while let Some((p, c)) = poly.pop_leading() {
            match self.find_tip(&p.arrows) {
                Some((pos, id)) => {
                    let rule = self.rules[id].as_ref().unwrap();
                    let len = rule.tip.len();
                    let u = Path {
                        start: p.start,
                        end: rule.tip.start,
                        arrows: p.arrows[..pos].to_vec(),
                    };
                    let v = Path {
                        start: rule.tip.end,
                        end: p.end,
                        arrows: p.arrows[pos + len..].to_vec(),
                    };
                    poly.add_scaled(f, &rule.rhs.sandwich(f, &u, &v), &c);
                }
                None => out.add_term(f, p, c),
            }
        }
        out
    }

    /// All normal words, sorted in degree-lexicographic order.
    pub fn normal_words(&self, quiver: &Quiver, ceiling: usize) -> Result<Vec<Path>> {
        let mut out: Vec<Path> = (0..quiver.vertex_count()).map(Path::trivial).collect();
        let mut frontier: Vec<Path> = out.clone();
        while let Some(p) = frontier.pop() {
            for (i, a) in quiver.arrows().iter().enumerate() {
                if a.source != p.end {
                    continue;
                }
                let mut arrows = p.arrows.clone();
                arrows.push(i);
                if self.has_tip_suffix(&arrows) {
                    continue;
                }
                if arrows.len() > ceiling {
                    return Err(Error::Truncation(format!(
                        "normal words longer than the ceiling {ceiling}; the algebra may be infinite-dimensional"
                    )));
                }
                let q = Path {
                    start: p.start,
                    end: a.target,
                    arrows,
                };
                out.push(q.clone());
                if out.len() > MAX_NORMAL_WORDS {
                    return Err(Error::Truncation(format!(
                        "more than {MAX_NORMAL_WORDS} normal words"
                    )));
                }
                frontier.push(q);
            }
        }
        out.sort();
        Ok(out)
    }
}

fn contains_word(hay: &[usize], needle: &[usize]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn system(text: &str) -> (RewriteSystem, Vec<Path>) {
        let p = parse_presentation(text, None).unwrap();
        let sys = RewriteSystem::complete(&p.field, &p.relations, 64).unwrap();
        let words = sys.normal_words(&p.quiver, 64).unwrap();
        (sys, words)
    }

    #[test]
    fn exterior_algebra_like() {
        let (_, words) = system("field char=2\nvertices 1\narrow X 0 0\narrow Y 0 0\nrelation X^2\nrelation Y^2\ncommutative\n");
        assert_eq!(words.len(), 4);
    }

    #[test]
    fn overlap_creates_new_rule() {
        // XY = YX and X^2 = 0 with Y^3 = 0 over Q gives K[X,Y]/(X^2, Y^3): dim 6
        let (_, words) = system("field char=0\nvertices 1\narrow X 0 0\narrow Y 0 0\nrelation X^2\nrelation Y^3\nrelation YX - XY\n");
        assert_eq!(words.len(), 6);
    }

    #[test]
    fn infinite_dimensional_is_reported() {
        let p = parse_presentation("field char=0\nvertices 1\narrow X 0 0\narrow Y 0 0\nrelation X^2\n", None).unwrap();
        let sys = RewriteSystem::complete(&p.field, &p.relations, 16).unwrap();
        assert!(matches!(sys.normal_words(&p.quiver, 16), Err(Error::Truncation(_))));
    }
}
