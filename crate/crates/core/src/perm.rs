//! Pattern-avoiding permutations and their binary-string encoding.
//!
//! The inversion array of a permutation records, for each position but the
//! last, how many smaller entries sit to its right. Permutations avoiding
//! 321, 312, and 2 3 .. (k+1) 1 are exactly those whose inversion array is
//! binary with no run of k ones, so the run-avoiding string languages encode
//! the class. `perm_from_string` and `string_from_perm` realize the bijection
//! in both directions in linear time.
//!
//! The class also carries a Gray order built from the same reversal-carrying
//! recursion as the string order: blocks prefixed by 2 3 .. j 1 over shifted,
//! reversed lower lists. Consecutive permutations differ by one adjacent
//! transposition, and at block seams the swapped entries are 1 and j.

use std::fmt;

use thiserror::Error;

use crate::codec::{Digit, DigitString};
use crate::graycode::Direction;
use crate::language;

/// A permutation of 1..=m, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u32>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("entries are not a permutation of 1..={m}")]
    InvalidPermutation { m: usize },
    #[error("the empty permutation has no inversion array")]
    EmptyPermutation,
    #[error("inversion value {value} at index {index} is not binary")]
    NonBinaryValue { index: usize, value: Digit },
    #[error("lengths differ: {a} vs {b}")]
    LengthMismatch { a: usize, b: usize },
    #[error("naive pattern search limited to patterns of {max_pattern} in hosts of {max_host}, got {pattern} in {host}")]
    SizeGuard {
        pattern: usize,
        host: usize,
        max_pattern: usize,
        max_host: usize,
    },
}

impl Permutation {
    /// Validates that `entries` is a bijection on 1..=len.
    pub fn new(entries: Vec<u32>) -> Result<Self, PermError> {
        let m = entries.len();
        let mut seen = vec![false; m];
        for &e in &entries {
            let ok = e >= 1 && (e as usize) <= m && !seen[e as usize - 1];
            if !ok {
                return Err(PermError::InvalidPermutation { m });
            }
            seen[e as usize - 1] = true;
        }
        Ok(Permutation { entries })
    }

    pub fn empty() -> Self {
        Permutation {
            entries: Vec::new(),
        }
    }

    pub fn identity(m: usize) -> Self {
        Permutation {
            entries: (1..=m as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Entry at 1-indexed position i.
    pub fn entry(&self, i: usize) -> u32 {
        self.entries[i - 1]
    }
}

impl fmt::Display for Permutation {
    /// Entries concatenate up to length 9; longer permutations separate them
    /// with spaces to stay unambiguous.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for e in &self.entries {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let rendered: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", rendered.join(" "))
        }
    }
}

/// Inversion counts in position order; values are written left to right,
/// exactly as the digit strings they correspond to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InversionArray {
    values: Vec<Digit>,
}

impl InversionArray {
    pub fn new(values: Vec<Digit>) -> Self {
        InversionArray { values }
    }

    pub fn values(&self) -> &[Digit] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_binary(&self) -> bool {
        self.values.iter().all(|&v| v <= 1)
    }

    pub fn to_digit_string(&self) -> DigitString {
        DigitString::new(self.values.clone())
    }

    pub fn from_digit_string(s: &DigitString) -> Self {
        InversionArray::new(s.digits().to_vec())
    }
}

impl fmt::Display for InversionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_digit_string().fmt(f)
    }
}

/// For i = 1..m-1 (1-indexed), how many entries right of position i are
/// smaller than the entry there. The last position is omitted; its count is
/// always 0.
pub fn inversion_array(p: &Permutation) -> Result<InversionArray, PermError> {
    if p.is_empty() {
        return Err(PermError::EmptyPermutation);
    }
    let e = p.entries();
    let values = (0..e.len() - 1)
        .map(|i| e[i + 1..].iter().filter(|&&x| x < e[i]).count() as Digit)
        .collect();
    Ok(InversionArray::new(values))
}

/// Rebuild a permutation from a binary inversion array. Append a 0 to the
/// array; the positions holding 0 receive, in order, the value 1 and then
/// one more than the previous 0 position; every other position i gets i+1.
pub fn perm_from_string(v: &InversionArray) -> Result<Permutation, PermError> {
    if let Some((index, &value)) = v.values().iter().enumerate().find(|(_, &x)| x > 1) {
        return Err(PermError::NonBinaryValue { index, value });
    }
    let m = v.len() + 1;
    let mut entries = vec![0u32; m];
    let mut prev_zero: Option<usize> = None;
    for i in 1..=m {
        let is_zero = i == m || v.values()[i - 1] == 0;
        if is_zero {
            entries[i - 1] = match prev_zero {
                None => 1,
                Some(p) => p as u32 + 1,
            };
            prev_zero = Some(i);
        } else {
            entries[i - 1] = i as u32 + 1;
        }
    }
    debug_assert!(Permutation::new(entries.clone()).is_ok());
    Ok(Permutation { entries })
}

/// Binary inversion array of a class member, computed without counting:
/// position i contributes 0 exactly when its entry is at most i.
pub fn string_from_perm(p: &Permutation) -> InversionArray {
    let m = p.len();
    let values = (1..m)
        .map(|i| if p.entry(i) as usize <= i { 0 } else { 1 })
        .collect();
    InversionArray::new(values)
}

/// Caps for the naive pattern search below.
pub const MAX_PATTERN_LEN: usize = 6;
pub const MAX_HOST_LEN: usize = 12;

/// Whether p contains `pattern`: some subsequence of p is order-isomorphic
/// to it. Checks every subsequence, so both lengths are guarded.
pub fn contains_pattern(p: &Permutation, pattern: &Permutation) -> Result<bool, PermError> {
    if pattern.len() > MAX_PATTERN_LEN || p.len() > MAX_HOST_LEN {
        return Err(PermError::SizeGuard {
            pattern: pattern.len(),
            host: p.len(),
            max_pattern: MAX_PATTERN_LEN,
            max_host: MAX_HOST_LEN,
        });
    }
    if pattern.len() > p.len() {
        return Ok(false);
    }
    let mut chosen = Vec::with_capacity(pattern.len());
    Ok(search(p.entries(), pattern.entries(), 0, &mut chosen))
}

fn search(host: &[u32], pattern: &[u32], start: usize, chosen: &mut Vec<u32>) -> bool {
    if chosen.len() == pattern.len() {
        return order_isomorphic(chosen, pattern);
    }
    let needed = pattern.len() - chosen.len();
    for i in start..=host.len().saturating_sub(needed) {
        chosen.push(host[i]);
        if search(host, pattern, i + 1, chosen) {
            chosen.pop();
            return true;
        }
        chosen.pop();
    }
    false
}

fn order_isomorphic(a: &[u32], b: &[u32]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if (a[i] < a[j]) != (b[i] < b[j]) {
                return false;
            }
        }
    }
    true
}

/// The three forbidden patterns for the class: 321, 312, and 2 3 .. (k+1) 1.
pub fn class_patterns(k: u64) -> [Permutation; 3] {
    assert!(k >= 2, "class parameter k must be at least 2");
    let long: Vec<u32> = (2..=k as u32 + 1).chain([1]).collect();
    [
        Permutation::new(vec![3, 2, 1]).unwrap(),
        Permutation::new(vec![3, 1, 2]).unwrap(),
        Permutation::new(long).unwrap(),
    ]
}

/// Class membership via the string side: the inversion array must be binary
/// and avoid a run of k ones. The empty permutation is in every class.
pub fn in_class(p: &Permutation, k: u64) -> bool {
    assert!(k >= 2, "class parameter k must be at least 2");
    if p.is_empty() {
        return true;
    }
    let v = inversion_array(p).expect("nonempty");
    v.is_binary()
        && language::avoids_ones_run(&v.to_digit_string(), k)
            .expect("binary values already checked")
}

/// Entries shifted up by q; not a permutation of 1..=m any more, so a bare
/// sequence comes back.
pub fn shift_up(p: &Permutation, q: u32) -> Vec<u32> {
    p.entries().iter().map(|&e| e + q).collect()
}

/// The block prefix 2 3 .. j 1 used by the set and Gray recursions.
fn block_prefix(j: usize) -> Vec<u32> {
    (2..=j as u32).chain([1]).collect()
}

fn prefixed_shifted(prefix: &[u32], sub: &Permutation, shift: u32) -> Permutation {
    let mut entries = Vec::with_capacity(prefix.len() + sub.len());
    entries.extend_from_slice(prefix);
    entries.extend(sub.entries().iter().map(|&e| e + shift));
    Permutation { entries }
}

/// The class as a set, in recursion order: for j = 1..=min(k, m) the block
/// 2 3 .. j 1 followed by each lower-level permutation shifted up by j.
pub fn perm_set(k: u64, m: usize) -> Vec<Permutation> {
    assert!(k >= 2, "class parameter k must be at least 2");
    if m == 0 {
        return vec![Permutation::empty()];
    }
    let mut out = Vec::new();
    for j in 1..=(k as usize).min(m) {
        let prefix = block_prefix(j);
        for sub in perm_set(k, m - j) {
            out.push(prefixed_shifted(&prefix, &sub, j as u32));
        }
    }
    out
}

/// Gray order over the class: same blocks as [`perm_set`], each lower list
/// reversed. Consecutive permutations differ by one adjacent transposition.
pub fn gray_perms(k: u64, m: usize) -> Vec<Permutation> {
    assert!(k >= 2, "class parameter k must be at least 2");
    if m == 0 {
        return vec![Permutation::empty()];
    }
    let mut out = Vec::new();
    for j in 1..=(k as usize).min(m) {
        let prefix = block_prefix(j);
        let sub = gray_perms(k, m - j);
        for s in sub.iter().rev() {
            out.push(prefixed_shifted(&prefix, s, j as u32));
        }
    }
    out
}

#[derive(Debug, Clone, Copy)]
struct PermFrame {
    m: usize,
    dir: Direction,
    next_block: usize,
    pushed: usize,
    shift: u32,
}

/// Lazy form of [`gray_perms`], mirroring the string cursor's frame stack.
#[derive(Debug)]
pub struct PermGrayCursor {
    k: u64,
    stack: Vec<PermFrame>,
    buf: Vec<u32>,
}

pub fn gray_perms_cursor(k: u64, m: usize) -> PermGrayCursor {
    assert!(k >= 2, "class parameter k must be at least 2");
    PermGrayCursor {
        k,
        stack: vec![PermFrame {
            m,
            dir: Direction::Forward,
            next_block: 0,
            pushed: 0,
            shift: 0,
        }],
        buf: Vec::with_capacity(m),
    }
}

impl PermGrayCursor {
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

impl Iterator for PermGrayCursor {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        loop {
            let frame = *self.stack.last()?;
            let nblocks = (self.k as usize).min(frame.m);
            if nblocks == 0 {
                let out = Permutation {
                    entries: self.buf.clone(),
                };
                debug_assert!(Permutation::new(out.entries.clone()).is_ok());
                self.pop_completed();
                return Some(out);
            }
            if frame.next_block == nblocks {
                self.pop_completed();
                continue;
            }
            let j = match frame.dir {
                Direction::Forward => frame.next_block + 1,
                Direction::Reversed => nblocks - frame.next_block,
            };
            for v in 2..=j as u32 {
                self.buf.push(v + frame.shift);
            }
            self.buf.push(1 + frame.shift);
            self.stack.last_mut().unwrap().pushed = j;
            self.stack.push(PermFrame {
                m: frame.m - j,
                dir: frame.dir.flip(),
                next_block: 0,
                pushed: 0,
                shift: frame.shift + j as u32,
            });
        }
    }
}

/// If b is a with one adjacent pair swapped, the 1-indexed position of that
/// pair; None when the permutations are equal or differ some other way.
pub fn adjacent_transposition_delta(
    a: &Permutation,
    b: &Permutation,
) -> Result<Option<usize>, PermError> {
    if a.len() != b.len() {
        return Err(PermError::LengthMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    let (x, y) = (a.entries(), b.entries());
    let Some(first) = (0..x.len()).find(|&i| x[i] != y[i]) else {
        return Ok(None);
    };
    let swapped = first + 1 < x.len()
        && x[first] == y[first + 1]
        && x[first + 1] == y[first]
        && x[first + 2..] == y[first + 2..];
    Ok(if swapped { Some(first + 1) } else { None })
}
