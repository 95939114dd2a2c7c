//! Automorphism group enumeration by backtracking on generator images.

use super::{Automorphism, GroupTable};
use crate::{Error, Perm, Result};

/// Enumerates all automorphisms of `g`, sorted by image vector.
///
/// The search assigns images to a greedy generating set, propagating
/// products eagerly and pruning on element orders and injectivity.  If more
/// than `cap` automorphisms are found the search aborts with
/// [`Error::CapExceeded`].
pub fn automorphism_group(g: &GroupTable, cap: usize) -> Result<Vec<Automorphism>> {
    let n = g.order();
    let gens = g.generating_set();
    let orders = g.element_orders();

    let mut search = Search {
        g,
        gens: &gens,
        orders: &orders,
        cap,
        img: vec![usize::MAX; n],
        pre: vec![usize::MAX; n],
        known: Vec::with_capacity(n),
        found: Vec::new(),
    };
    search.img[g.identity()] = g.identity();
    search.pre[g.identity()] = g.identity();
    search.known.push(g.identity());
    search.descend(0)?;

    let mut perms = search.found;
    perms.sort_unstable();
    perms
        .into_iter()
        .map(|p| Automorphism::new(p, g))
        .collect()
}

struct Search<'a> {
    g: &'a GroupTable,
    gens: &'a [usize],
    orders: &'a [usize],
    cap: usize,
    img: Vec<usize>,
    pre: Vec<usize>,
    known: Vec<usize>,
    found: Vec<Perm>,
}

impl Search<'_> {
    fn descend(&mut self, level: usize) -> Result<()> {
        if level == self.gens.len() {
            debug_assert_eq!(self.known.len(), self.g.order());
            self.found.push(Perm::new(self.img.clone()).expect("bijection"));
            if self.found.len() > self.cap {
                return Err(Error::CapExceeded {
                    what: "automorphism group",
                    needed: self.found.len(),
                    limit: self.cap,
                });
            }
            return Ok(());
        }
        let gen = self.gens[level];
        debug_assert_eq!(self.img[gen], usize::MAX);
        for cand in 0..self.g.order() {
            if self.orders[cand] != self.orders[gen] || self.pre[cand] != usize::MAX {
                continue;
            }
            let mark = self.known.len();
            if self.assign_and_close(gen, cand) {
                self.descend(level + 1)?;
            }
            self.rewind(mark);
        }
        Ok(())
    }

    /// Sets `img[x] = v` and closes under products with all known elements.
    /// Returns false on any conflict, leaving cleanup to `rewind`.
    fn assign_and_close(&mut self, x: usize, v: usize) -> bool {
        let mut queue = self.known.len();
        if !self.record(x, v) {
            return false;
        }
        while queue < self.known.len() {
            let a = self.known[queue];
            queue += 1;
            for i in 0..self.known.len() {
                let b = self.known[i];
                let (fa, fb) = (self.img[a], self.img[b]);
                if !self.record(self.g.mul(a, b), self.g.mul(fa, fb)) {
                    return false;
                }
                if !self.record(self.g.mul(b, a), self.g.mul(fb, fa)) {
                    return false;
                }
            }
        }
        true
    }

    fn record(&mut self, x: usize, v: usize) -> bool {
        if self.img[x] != usize::MAX {
            return self.img[x] == v;
        }
        if self.pre[v] != usize::MAX {
            return false; // two elements would share an image
        }
        if self.orders[x] != self.orders[v] {
            return false;
        }
        self.img[x] = v;
        self.pre[v] = x;
        self.known.push(x);
        true
    }

    fn rewind(&mut self, mark: usize) {
        while self.known.len() > mark {
            let x = self.known.pop().unwrap();
            let v = self.img[x];
            self.img[x] = usize::MAX;
            self.pre[v] = usize::MAX;
        }
    }
}
