//! Gray-ordered listings of binary strings and of the run-avoiding languages.
//!
//! Both orders come from reversal-carrying recursions: a list at one level is
//! a concatenation of prefixed copies of lower-level lists, some of them
//! reversed. Reversing such a list again flips which copies are reversed, so
//! a traversal never needs to materialize anything: it keeps a stack of
//! frames, each remembering its level, a direction flag, and how far through
//! its blocks it has gotten. [`GrayCursor`] walks that stack lazily and emits
//! one string at a time; memory stays linear in the string length however
//! long the list is.
//!
//! The binary-string order is the reflected one: a 0-branch over the reversed
//! lower list, then a 1-branch over the plain lower list. The run-avoiding
//! order switches to run-prefix blocks (1^(j-1) 0 for j = 1..=k) once the
//! length reaches k, every block reversed. Consecutive strings differ in
//! exactly one position, and the last string of each level is the first of
//! the next level with its leading digit dropped.

use thiserror::Error;

use crate::codec::{Digit, DigitString};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Direction {
    Forward,
    Reversed,
}

impl Direction {
    pub(crate) fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Reversed,
            Direction::Reversed => Direction::Forward,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum FrameKind {
    /// A level of the run-avoiding list; only exists for m >= k.
    Lang { m: usize },
    /// A level of the reflected binary list.
    Brgc { m: usize },
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    kind: FrameKind,
    dir: Direction,
    /// Next block ordinal in traversal order.
    next_block: usize,
    /// Digits pushed for the block currently being expanded.
    pushed: usize,
}

impl Frame {
    fn new(kind: FrameKind, dir: Direction) -> Frame {
        Frame {
            kind,
            dir,
            next_block: 0,
            pushed: 0,
        }
    }
}

/// Lazy Gray-order traversal. Yields [`DigitString`]s; holds one frame per
/// recursion level plus the digits of the string under construction.
#[derive(Debug)]
pub struct GrayCursor {
    k: u64,
    stack: Vec<Frame>,
    buf: Vec<Digit>,
}

/// Gray order over the length-m binary strings avoiding a run of k ones.
/// Levels chain: the first string is 0 followed by the last string one
/// level down.
pub fn gray_language(k: u64, m: usize) -> GrayCursor {
    assert!(k >= 2, "run parameter k must be at least 2");
    GrayCursor {
        k,
        stack: vec![Frame::new(lang_or_base(k, m), Direction::Forward)],
        buf: Vec::with_capacity(m),
    }
}

/// Gray order over all length-m binary strings (the reflected order).
pub fn brgc_cursor(m: usize) -> GrayCursor {
    GrayCursor {
        // No Lang frame is ever created: every level stays in the Brgc base.
        k: 2,
        stack: vec![Frame::new(FrameKind::Brgc { m }, Direction::Forward)],
        buf: Vec::with_capacity(m),
    }
}

fn lang_or_base(k: u64, m: usize) -> FrameKind {
    if (m as u64) < k {
        FrameKind::Brgc { m }
    } else {
        FrameKind::Lang { m }
    }
}

impl GrayCursor {
    fn block_count(&self, kind: FrameKind) -> usize {
        match kind {
            FrameKind::Brgc { m } => {
                if m == 0 {
                    0
                } else {
                    2
                }
            }
            // Lang frames satisfy m >= k, so all k blocks are present.
            FrameKind::Lang { .. } => self.k as usize,
        }
    }

    /// Push the prefix of the given block (in natural order) and return the
    /// frame for its sub-list.
    fn expand(&mut self, kind: FrameKind, natural: usize, dir: Direction) -> (usize, Frame) {
        match kind {
            FrameKind::Brgc { m } => {
                // Block 0 is the 0-branch over the reversed sub-list; block 1
                // the 1-branch over the plain sub-list.
                self.buf.push(natural as Digit);
                let child_dir = if natural == 0 { dir.flip() } else { dir };
                (1, Frame::new(FrameKind::Brgc { m: m - 1 }, child_dir))
            }
            FrameKind::Lang { m } => {
                // Block j carries the prefix 1^(j-1) 0; every sub-list is
                // reversed.
                let j = natural + 1;
                for _ in 0..j - 1 {
                    self.buf.push(1);
                }
                self.buf.push(0);
                (j, Frame::new(lang_or_base(self.k, m - j), dir.flip()))
            }
        }
    }

    /// Drop the finished top frame; the parent reclaims its block prefix and
    /// moves to its next block.
    fn pop_completed(&mut self) {
        self.stack.pop();
        if let Some(parent) = self.stack.last_mut() {
            let pushed = parent.pushed;
            parent.pushed = 0;
            parent.next_block += 1;
            let keep = self.buf.len() - pushed;
            self.buf.truncate(keep);
        }
    }
}

impl Iterator for GrayCursor {
    type Item = DigitString;

    fn next(&mut self) -> Option<DigitString> {
        loop {
            let frame = *self.stack.last()?;
            let nblocks = self.block_count(frame.kind);
            if nblocks == 0 {
                // Leaf: the buffer holds a complete string.
                let out = DigitString::new(self.buf.clone());
                self.pop_completed();
                return Some(out);
            }
            if frame.next_block == nblocks {
                self.pop_completed();
                continue;
            }
            let natural = match frame.dir {
                Direction::Forward => frame.next_block,
                Direction::Reversed => nblocks - 1 - frame.next_block,
            };
            let (pushed, child) = self.expand(frame.kind, natural, frame.dir);
            self.stack.last_mut().unwrap().pushed = pushed;
            self.stack.push(child);
        }
    }
}

/// Eager reflected Gray list. Meant for tests and small m; the cursor form
/// handles longer lengths.
pub fn brgc_list(m: usize) -> Vec<DigitString> {
    assert!(m <= 20, "eager listing capped at m = 20; use brgc_cursor");
    brgc_level(m)
}

fn brgc_level(m: usize) -> Vec<DigitString> {
    if m == 0 {
        return vec![DigitString::empty()];
    }
    let sub = brgc_level(m - 1);
    let mut out = Vec::with_capacity(sub.len() * 2);
    for s in sub.iter().rev() {
        out.push(s.prefixed(&[0]));
    }
    for s in &sub {
        out.push(s.prefixed(&[1]));
    }
    out
}

/// The reflected list built from run-prefix blocks instead of one reflection
/// per digit: for j = 1..=m a block 1^(j-1) 0 over the reversed lower list,
/// and the all-ones string last. Produces exactly `brgc_list`.
pub fn brgc_full_history_list(m: usize) -> Vec<DigitString> {
    assert!(m <= 20, "eager listing capped at m = 20; use brgc_cursor");
    brgc_full_history_level(m)
}

fn brgc_full_history_level(m: usize) -> Vec<DigitString> {
    if m == 0 {
        return vec![DigitString::empty()];
    }
    let mut out = Vec::new();
    for j in 1..=m {
        let mut prefix = vec![1; j - 1];
        prefix.push(0);
        let sub = brgc_full_history_level(m - j);
        for s in sub.iter().rev() {
            out.push(s.prefixed(&prefix));
        }
    }
    out.push(DigitString::new(vec![1; m]));
    out
}

/// Eager form of [`gray_language`], built by direct recursion with
/// materialized reversals. Exists to cross-check the cursor.
pub fn gray_language_list(k: u64, m: usize) -> Vec<DigitString> {
    assert!(k >= 2, "run parameter k must be at least 2");
    gray_language_level(k, m)
}

fn gray_language_level(k: u64, m: usize) -> Vec<DigitString> {
    if (m as u64) < k {
        return brgc_level(m);
    }
    let mut out = Vec::new();
    for j in 1..=k as usize {
        let mut prefix = vec![1; j - 1];
        prefix.push(0);
        let sub = gray_language_level(k, m - j);
        for s in sub.iter().rev() {
            out.push(s.prefixed(&prefix));
        }
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrayError {
    #[error("hamming distance needs equal lengths, got {a} and {b}")]
    LengthMismatch { a: usize, b: usize },
}

/// Number of positions where two equal-length strings differ.
pub fn hamming(a: &DigitString, b: &DigitString) -> Result<usize, GrayError> {
    if a.len() != b.len() {
        return Err(GrayError::LengthMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    Ok(a.digits()
        .iter()
        .zip(b.digits())
        .filter(|(x, y)| x != y)
        .count())
}
