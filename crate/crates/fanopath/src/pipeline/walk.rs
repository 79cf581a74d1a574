//! Deterministic backtracking walkers that assemble red tight paths out of
//! pre-structured vertex material: ordered blob groups, a core set with
//! periodically inserted absorbed vertices, and a fixed host order with
//! optional insertions. All of them branch on the smallest eligible vertex
//! first and carry a node budget so no walk can run away on adversarial
//! input; within budget the search is exhaustive.

use crate::coloring::{Color, Coloring};

const NODE_BUDGET: u64 = 3_000_000;

fn extends_red(c: &Coloring, seq: &[usize], v: usize) -> bool {
    let k = seq.len();
    k < 2 || c.color([seq[k - 2], seq[k - 1], v]) == Color::Red
}

struct GroupWalk<'a> {
    c: &'a Coloring,
    groups: Vec<Vec<usize>>,
    target: usize,
    sacrifice: usize,
    used: Vec<Vec<bool>>,
    remaining: Vec<usize>,
    seq: Vec<usize>,
    best: Vec<usize>,
    budget: u64,
}

/// Longest red tight path that consumes `groups` from left to right: each
/// vertex comes from the current group, and the walk may advance to the
/// next group once at most `sacrifice` vertices of the current one remain
/// unused (those are abandoned). Returns the best sequence found, stopping
/// early once `target` is reached.
pub fn walk_groups(
    c: &Coloring,
    groups: &[Vec<usize>],
    target: usize,
    sacrifice: usize,
) -> Vec<usize> {
    let groups: Vec<Vec<usize>> = groups
        .iter()
        .filter(|g| !g.is_empty())
        .map(|g| {
            let mut g = g.clone();
            g.sort_unstable();
            g
        })
        .collect();
    if groups.is_empty() {
        return Vec::new();
    }
    let used = groups.iter().map(|g| vec![false; g.len()]).collect();
    let remaining = groups.iter().map(|g| g.len()).collect();
    let mut w = GroupWalk {
        c,
        groups,
        target,
        sacrifice,
        used,
        remaining,
        seq: Vec::new(),
        best: Vec::new(),
        budget: NODE_BUDGET,
    };
    w.dfs(0);
    w.best
}

impl GroupWalk<'_> {
    fn dfs(&mut self, gi: usize) {
        if self.seq.len() > self.best.len() {
            self.best = self.seq.clone();
        }
        if self.best.len() >= self.target || self.budget == 0 {
            return;
        }
        self.budget -= 1;
        let avail: usize = self.remaining[gi..].iter().sum();
        if self.seq.len() + avail <= self.best.len() {
            return;
        }
        // groups reachable right now: the current one, plus successors as
        // long as each group passed over has at most `sacrifice` leftovers
        let mut cand = vec![gi];
        let mut g = gi;
        while g + 1 < self.groups.len() && self.remaining[g] <= self.sacrifice {
            g += 1;
            cand.push(g);
        }
        for cg in cand {
            for idx in 0..self.groups[cg].len() {
                if self.used[cg][idx] {
                    continue;
                }
                let v = self.groups[cg][idx];
                if !extends_red(self.c, &self.seq, v) {
                    continue;
                }
                self.used[cg][idx] = true;
                self.remaining[cg] -= 1;
                self.seq.push(v);
                self.dfs(cg);
                self.seq.pop();
                self.remaining[cg] += 1;
                self.used[cg][idx] = false;
                if self.best.len() >= self.target || self.budget == 0 {
                    return;
                }
            }
        }
    }
}

struct PatternedWalk<'a> {
    c: &'a Coloring,
    core: Vec<usize>,
    extras: Vec<usize>,
    period: usize,
    offset: usize,
    target: usize,
    core_used: Vec<bool>,
    extra_used: Vec<bool>,
    extras_left: usize,
    core_left: usize,
    seq: Vec<usize>,
    best: Vec<usize>,
    budget: u64,
}

/// Red tight path over `core` that must place a vertex from `extras` at
/// every position congruent to `offset` mod `period`, until the extras run
/// out; afterwards the walk continues on the core alone. Period 3 gives the
/// good*-tuple absorption shape (a, b, v repeating), period 5 the
/// open/good-tuple shape (a, b, v, c, d repeating).
pub fn patterned_walk(
    c: &Coloring,
    core: &[usize],
    extras: &[usize],
    period: usize,
    offset: usize,
    target: usize,
) -> Vec<usize> {
    assert!(period >= 2 && offset < period);
    let mut core = core.to_vec();
    core.sort_unstable();
    let mut extras = extras.to_vec();
    extras.sort_unstable();
    let mut w = PatternedWalk {
        c,
        core_used: vec![false; core.len()],
        extra_used: vec![false; extras.len()],
        extras_left: extras.len(),
        core_left: core.len(),
        core,
        extras,
        period,
        offset,
        target,
        seq: Vec::new(),
        best: Vec::new(),
        budget: NODE_BUDGET,
    };
    w.dfs();
    w.best
}

impl PatternedWalk<'_> {
    fn dfs(&mut self) {
        if self.seq.len() > self.best.len() {
            self.best = self.seq.clone();
        }
        if self.best.len() >= self.target || self.budget == 0 {
            return;
        }
        self.budget -= 1;
        if self.seq.len() + self.core_left + self.extras_left <= self.best.len() {
            return;
        }
        let extra_slot = self.extras_left > 0 && self.seq.len() % self.period == self.offset;
        let len = if extra_slot {
            self.extras.len()
        } else {
            self.core.len()
        };
        for idx in 0..len {
            let (v, used) = if extra_slot {
                (self.extras[idx], self.extra_used[idx])
            } else {
                (self.core[idx], self.core_used[idx])
            };
            if used || !extends_red(self.c, &self.seq, v) {
                continue;
            }
            if extra_slot {
                self.extra_used[idx] = true;
                self.extras_left -= 1;
            } else {
                self.core_used[idx] = true;
                self.core_left -= 1;
            }
            self.seq.push(v);
            self.dfs();
            self.seq.pop();
            if extra_slot {
                self.extra_used[idx] = false;
                self.extras_left += 1;
            } else {
                self.core_used[idx] = false;
                self.core_left += 1;
            }
            if self.best.len() >= self.target || self.budget == 0 {
                return;
            }
        }
    }
}

struct InterleaveWalk<'a> {
    c: &'a Coloring,
    order: Vec<usize>,
    inserts: Vec<usize>,
    target: usize,
    insert_used: Vec<bool>,
    seq: Vec<usize>,
    best: Vec<usize>,
    budget: u64,
}

/// Follow `order` as a fixed spine and try to insert one unused vertex
/// from `inserts` after every second spine vertex; an insertion may be
/// skipped when no red-compatible vertex fits. Returns the best red tight
/// path found.
pub fn interleave_walk(
    c: &Coloring,
    order: &[usize],
    inserts: &[usize],
    target: usize,
) -> Vec<usize> {
    let mut inserts = inserts.to_vec();
    inserts.sort_unstable();
    let mut w = InterleaveWalk {
        c,
        order: order.to_vec(),
        insert_used: vec![false; inserts.len()],
        inserts,
        target,
        seq: Vec::new(),
        best: Vec::new(),
        budget: NODE_BUDGET,
    };
    w.dfs(0, false);
    w.best
}

impl InterleaveWalk<'_> {
    fn dfs(&mut self, oi: usize, just_inserted: bool) {
        if self.seq.len() > self.best.len() {
            self.best = self.seq.clone();
        }
        if self.best.len() >= self.target || self.budget == 0 {
            return;
        }
        self.budget -= 1;
        // an insertion slot opens after every completed spine pair,
        // including once at the very end of the spine
        if oi >= 2 && oi % 2 == 0 && !just_inserted {
            for idx in 0..self.inserts.len() {
                if self.insert_used[idx] {
                    continue;
                }
                let b = self.inserts[idx];
                if !extends_red(self.c, &self.seq, b) {
                    continue;
                }
                self.insert_used[idx] = true;
                self.seq.push(b);
                self.dfs(oi, true);
                self.seq.pop();
                self.insert_used[idx] = false;
                if self.best.len() >= self.target || self.budget == 0 {
                    return;
                }
            }
        }
        if oi >= self.order.len() {
            return;
        }
        let v = self.order[oi];
        if extends_red(self.c, &self.seq, v) {
            self.seq.push(v);
            self.dfs(oi + 1, false);
            self.seq.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::extended_lower_bound;

    fn is_red_tight_path(c: &Coloring, seq: &[usize]) -> bool {
        seq.windows(3)
            .all(|w| c.color([w[0], w[1], w[2]]) == Color::Red)
    }

    #[test]
    fn groups_all_red() {
        let c = Coloring::all_red(9);
        let groups = vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]];
        let seq = walk_groups(&c, &groups, 9, 2);
        assert_eq!(seq, vec![0, 1, 2, 3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn groups_respect_order() {
        // red only inside {0,1,2} and inside {3,4,5}: no junction triple,
        // so the walk cannot leave the first group without sacrifice room
        let (c, _) = extended_lower_bound(3).unwrap(); // blocks {0,1,2},{3,4}
        let groups = vec![vec![0, 1, 2], vec![3, 4]];
        let seq = walk_groups(&c, &groups, 5, 2);
        assert_eq!(seq.len(), 3);
        assert!(is_red_tight_path(&c, &seq));
    }

    #[test]
    fn groups_single_butterfly_stitch() {
        // all red: two groups of 4, stitch costs nothing
        let c = Coloring::all_red(8);
        let groups = vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]];
        let seq = walk_groups(&c, &groups, 8, 2);
        assert_eq!(seq.len(), 8);
        assert!(is_red_tight_path(&c, &seq));
    }

    #[test]
    fn patterned_degenerate_is_plain_walk() {
        let c = Coloring::all_red(6);
        let seq = patterned_walk(&c, &[0, 1, 2, 3, 4, 5], &[], 3, 2, 6);
        assert_eq!(seq, vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn patterned_places_extras_on_slots() {
        let c = Coloring::all_red(8);
        let seq = patterned_walk(&c, &[0, 1, 2, 3, 4, 5], &[6, 7], 3, 2, 8);
        assert_eq!(seq.len(), 8);
        assert_eq!(seq[2], 6);
        assert_eq!(seq[5], 7);
        assert!(is_red_tight_path(&c, &seq));
    }

    #[test]
    fn patterned_extras_absorbed_in_block() {
        // extended block A is all red; a junk vertex inside A absorbs cleanly
        let (c, _) = extended_lower_bound(7).unwrap();
        let seq = patterned_walk(&c, &[0, 1, 2, 3, 4, 5], &[6], 3, 2, 7);
        assert_eq!(seq.len(), 7);
        assert!(is_red_tight_path(&c, &seq));
    }

    #[test]
    fn interleave_inserts_and_skips() {
        let c = Coloring::all_red(7);
        let seq = interleave_walk(&c, &[0, 1, 2, 3], &[4, 5], 6);
        assert_eq!(seq.len(), 6);
        assert!(is_red_tight_path(&c, &seq));
        // no inserts: the spine itself
        let seq = interleave_walk(&c, &[0, 1, 2, 3], &[], 4);
        assert_eq!(seq, vec![0, 1, 2, 3]);
    }

    #[test]
    fn interleave_blue_spine_stops() {
        let c = Coloring::all_blue(6);
        let seq = interleave_walk(&c, &[0, 1, 2, 3], &[4, 5], 6);
        assert!(seq.len() <= 2);
    }
}
