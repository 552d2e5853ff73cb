//! Orderly generation: an independent route to the classification.
//!
//! Canonical forms are closed under removing the largest point, so every
//! canonical integral set arises from a canonical parent by appending a point
//! larger than all of its points. Non-canonical children are rejected at every
//! level; a canonical set with no extension candidates is a class representative.

use super::{ClassRecord, SearchContext, SearchError};
use crate::bitset::BitSet;
use crate::symmetry::canon::is_canonical_with;
use rayon::prelude::*;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

struct Orderly<'a> {
    sc: &'a SearchContext,
    deadline: Option<Instant>,
    expired: &'a AtomicBool,
    nodes: &'a AtomicU64,
}

impl Orderly<'_> {
    fn grow(&self, codes: &mut Vec<u32>, common: &BitSet, out: &mut Vec<ClassRecord>) -> Result<(), SearchError> {
        if self.nodes.fetch_add(1, Ordering::Relaxed).is_multiple_of(4096)
            && self.deadline.is_some_and(|d| Instant::now() > d) {
                self.expired.store(true, Ordering::Relaxed);
            }
        if self.expired.load(Ordering::Relaxed) {
            return Err(SearchError::Timeout);
        }
        if common.is_empty() {
            out.push(self.sc.record(codes));
            return Ok(());
        }
        let last = *codes.last().expect("sets start at the origin");
        for x in common.iter().filter(|&x| x as u32 > last) {
            codes.push(x as u32);
            if is_canonical_with(self.sc.differ(), self.sc.group(), codes) {
                let next = common.intersection(self.sc.graph().row(x as u32));
                self.grow(codes, &next, out)?;
            }
            codes.pop();
        }
        Ok(())
    }
}

/// One record per class, sorted by size and canonical form.
pub fn classify_orderly(sc: &SearchContext, deadline: Option<Instant>) -> Result<Vec<ClassRecord>, SearchError> {
    let expired = AtomicBool::new(false);
    let nodes = AtomicU64::new(0);
    let walker = Orderly { sc, deadline, expired: &expired, nodes: &nodes };
    let root = BitSet::from_words(sc.graph().row(0));
    let firsts: Vec<usize> = root.iter().collect();
    let parts: Vec<Result<Vec<ClassRecord>, SearchError>> = firsts
        .into_par_iter()
        .map(|x| {
            let mut out = Vec::new();
            let mut codes = vec![0, x as u32];
            if is_canonical_with(sc.differ(), sc.group(), &codes) {
                let next = root.intersection(sc.graph().row(x as u32));
                walker.grow(&mut codes, &next, &mut out)?;
            }
            Ok(out)
        })
        .collect();
    let mut records = Vec::new();
    for p in parts {
        records.extend(p?);
    }
    records.sort_by(|a, b| (a.size, &a.form).cmp(&(b.size, &b.form)));
    Ok(records)
}
