//! Finite portraits of p-adic tree automorphisms.
//!
//! A portrait of depth `n` lists the activity (a power of the standard
//! `p`-cycle) at every vertex of levels `0..n`, in level order with children
//! in digit order. It determines the action of the automorphism on the first
//! `n` levels of the tree, so portraits of depth `n` are exactly the elements
//! of `A(p) / A(p)_n`.
//!
//! All products use the left action: `(g*h)(w) = g(h(w))`, so the section of
//! a product is `(g*h)_x = g_{h(x)} * h_x`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of vertices on levels `0..depth` of the `p`-ary tree.
pub fn vertex_count(p: u32, depth: usize) -> usize {
    let mut total = 0usize;
    let mut level = 1usize;
    for _ in 0..depth {
        total += level;
        level *= p as usize;
    }
    total
}

/// Index of the first vertex on `level`.
pub fn level_offset(p: u32, level: usize) -> usize {
    vertex_count(p, level)
}

/// Level-order index of a vertex given by its digits.
pub fn vertex_index(p: u32, vertex: &[u32]) -> usize {
    let pos = vertex.iter().fold(0usize, |acc, &x| acc * p as usize + x as usize);
    level_offset(p, vertex.len()) + pos
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Portrait {
    p: u32,
    depth: usize,
    activities: Vec<u32>,
}

impl Portrait {
    pub fn new(p: u32, depth: usize, activities: Vec<u32>) -> Result<Self> {
        let expected = vertex_count(p, depth);
        if activities.len() != expected {
            return Err(Error::BadPortrait(format!(
                "expected {expected} activities for p = {p}, depth = {depth}, got {}",
                activities.len()
            )));
        }
        if let Some(&d) = activities.iter().find(|&&a| a >= p) {
            return Err(Error::BadDigit { digit: d, p });
        }
        Ok(Portrait {
            p,
            depth,
            activities,
        })
    }

    pub(crate) fn from_raw(p: u32, depth: usize, activities: Vec<u32>) -> Self {
        debug_assert_eq!(activities.len(), vertex_count(p, depth));
        Portrait {
            p,
            depth,
            activities,
        }
    }

    pub fn identity(p: u32, depth: usize) -> Self {
        Portrait {
            p,
            depth,
            activities: vec![0; vertex_count(p, depth)],
        }
    }

    /// Portrait with the given root activity and first-level sections.
    pub fn from_sections(root: u32, sections: &[Portrait]) -> Result<Self> {
        let first = sections
            .first()
            .ok_or_else(|| Error::BadPortrait("no sections".into()))?;
        let (p, sub) = (first.p, first.depth);
        if sections.len() != p as usize {
            return Err(Error::BadPortrait(format!(
                "expected {p} sections, got {}",
                sections.len()
            )));
        }
        if let Some(s) = sections.iter().find(|s| s.p != p || s.depth != sub) {
            return Err(Error::DepthMismatch(sub, s.depth));
        }
        let mut activities = vec![root % p];
        let mut width = 1usize;
        for level in 0..sub {
            let off = level_offset(p, level);
            for s in sections {
                activities.extend_from_slice(&s.activities[off..off + width]);
            }
            width *= p as usize;
        }
        Ok(Portrait {
            p,
            depth: sub + 1,
            activities,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn activities(&self) -> &[u32] {
        &self.activities
    }

    pub fn is_identity(&self) -> bool {
        self.activities.iter().all(|&a| a == 0)
    }

    pub fn root_activity(&self) -> u32 {
        self.activities.first().copied().unwrap_or(0)
    }

    fn check_vertex(&self, vertex: &[u32]) -> Result<()> {
        if vertex.iter().any(|&x| x >= self.p) || vertex.len() > self.depth {
            return Err(Error::BadVertex(vertex.to_vec()));
        }
        Ok(())
    }

    /// Activity at a vertex of level `< depth`.
    pub fn activity_at(&self, vertex: &[u32]) -> Result<u32> {
        self.check_vertex(vertex)?;
        if vertex.len() == self.depth {
            return Err(Error::BadVertex(vertex.to_vec()));
        }
        Ok(self.activities[vertex_index(self.p, vertex)])
    }

    pub fn set_activity(&mut self, vertex: &[u32], value: u32) -> Result<()> {
        self.check_vertex(vertex)?;
        if vertex.len() == self.depth {
            return Err(Error::BadVertex(vertex.to_vec()));
        }
        let i = vertex_index(self.p, vertex);
        self.activities[i] = value % self.p;
        Ok(())
    }

    /// Drops the levels at and below `depth`.
    pub fn truncate(&self, depth: usize) -> Portrait {
        let depth = depth.min(self.depth);
        Portrait {
            p: self.p,
            depth,
            activities: self.activities[..vertex_count(self.p, depth)].to_vec(),
        }
    }

    /// For every vertex `u`, the level-order position of `self(u)` within its level.
    fn images(&self) -> Vec<usize> {
        let p = self.p as usize;
        let mut img = vec![0usize; self.activities.len()];
        let mut width = 1usize;
        for level in 0..self.depth.saturating_sub(1) {
            let off = level_offset(self.p, level);
            let next = off + width;
            for j in 0..width {
                let a = self.activities[off + j] as usize;
                let base = img[off + j] * p;
                for x in 0..p {
                    img[next + j * p + x] = base + (x + a) % p;
                }
            }
            width *= p;
        }
        img
    }

    /// `self * h`, i.e. apply `h` first.
    pub fn compose(&self, h: &Portrait) -> Result<Portrait> {
        if self.p != h.p || self.depth != h.depth {
            return Err(Error::DepthMismatch(self.depth, h.depth));
        }
        let img = h.images();
        let p = self.p;
        let mut out = vec![0u32; self.activities.len()];
        let mut width = 1usize;
        for level in 0..self.depth {
            let off = level_offset(p, level);
            for j in 0..width {
                let u = off + j;
                out[u] = (self.activities[off + img[u]] + h.activities[u]) % p;
            }
            width *= p as usize;
        }
        Ok(Portrait::from_raw(p, self.depth, out))
    }

    pub fn inverse(&self) -> Portrait {
        let img = self.images();
        let p = self.p;
        let mut out = vec![0u32; self.activities.len()];
        let mut width = 1usize;
        for level in 0..self.depth {
            let off = level_offset(p, level);
            for j in 0..width {
                let u = off + j;
                out[off + img[u]] = (p - self.activities[u]) % p;
            }
            width *= p as usize;
        }
        Portrait::from_raw(p, self.depth, out)
    }

    pub fn pow(&self, mut e: u64) -> Portrait {
        let mut acc = Portrait::identity(self.p, self.depth);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base).unwrap();
            }
            base = base.compose(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    /// The section at `vertex`, as a portrait of depth `depth - |vertex|`.
    pub fn section(&self, vertex: &[u32]) -> Result<Portrait> {
        self.check_vertex(vertex)?;
        let p = self.p;
        let k = vertex.len();
        let pos = vertex.iter().fold(0usize, |acc, &x| acc * p as usize + x as usize);
        let mut activities = Vec::with_capacity(vertex_count(p, self.depth - k));
        let mut width = 1usize;
        for level in k..self.depth {
            let off = level_offset(p, level) + pos * width;
            activities.extend_from_slice(&self.activities[off..off + width]);
            width *= p as usize;
        }
        Ok(Portrait::from_raw(p, self.depth - k, activities))
    }

    /// Image of a tree word of length at most `depth`.
    pub fn apply(&self, word: &[u32]) -> Result<Vec<u32>> {
        if let Some(&d) = word.iter().find(|&&x| x >= self.p) {
            return Err(Error::BadDigit { digit: d, p: self.p });
        }
        if word.len() > self.depth {
            return Err(Error::BadVertex(word.to_vec()));
        }
        let p = self.p as usize;
        let mut out = Vec::with_capacity(word.len());
        let mut pos = 0usize;
        for (level, &x) in word.iter().enumerate() {
            let a = self.activities[level_offset(self.p, level) + pos];
            out.push((x + a) % self.p);
            pos = pos * p + x as usize;
        }
        Ok(out)
    }

    /// Activities as a base-p digit string (requires `p <= 36`).
    pub fn digit_string(&self) -> String {
        self.activities
            .iter()
            .map(|&a| std::char::from_digit(a, 36).unwrap_or('?'))
            .collect()
    }

    pub fn from_digit_string(p: u32, depth: usize, s: &str) -> Result<Portrait> {
        let acts = s
            .chars()
            .map(|c| {
                c.to_digit(36)
                    .ok_or_else(|| Error::BadPortrait(format!("bad digit {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Portrait::new(p, depth, acts)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("portrait serializes")
    }

    pub fn from_json(s: &str) -> Result<Portrait> {
        let raw: Portrait =
            serde_json::from_str(s).map_err(|e| Error::BadPortrait(e.to_string()))?;
        if raw.p < 2 {
            return Err(Error::BadPortrait(format!("p = {} is too small", raw.p)));
        }
        Portrait::new(raw.p, raw.depth, raw.activities)
    }
}

impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut width = 1usize;
        for level in 0..self.depth {
            if level > 0 {
                write!(f, "|")?;
            }
            let off = level_offset(self.p, level);
            for a in &self.activities[off..off + width] {
                write!(f, "{a}")?;
            }
            width *= self.p as usize;
        }
        Ok(())
    }
}

/// Packs portraits of a fixed `(p, depth)` into a `u128`, root in the most
/// significant position, so that numeric order equals lexicographic order of
/// activity strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Codec {
    p: u32,
    depth: usize,
    bits: u32,
    vertices: usize,
}

impl Codec {
    pub fn new(p: u32, depth: usize) -> Result<Self> {
        let bits = 32 - (p - 1).leading_zeros();
        let vertices = vertex_count(p, depth);
        if bits as usize * vertices > 128 {
            return Err(Error::BadParameters(format!(
                "portraits of depth {depth} over p = {p} need {} bits; at most 128 are supported",
                bits as usize * vertices
            )));
        }
        Ok(Codec {
            p,
            depth,
            bits,
            vertices,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    /// Bits per activity.
    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    fn shift(&self, index: usize) -> u32 {
        self.bits * (self.vertices - 1 - index) as u32
    }

    #[inline]
    pub fn get(&self, code: u128, index: usize) -> u32 {
        ((code >> self.shift(index)) & ((1u128 << self.bits) - 1)) as u32
    }

    #[inline]
    pub fn with(&self, code: u128, index: usize, value: u32) -> u128 {
        let s = self.shift(index);
        let mask = ((1u128 << self.bits) - 1) << s;
        (code & !mask) | ((value as u128) << s)
    }

    pub fn encode_slice(&self, activities: &[u32]) -> u128 {
        activities
            .iter()
            .fold(0u128, |acc, &a| (acc << self.bits) | a as u128)
    }

    pub fn encode(&self, g: &Portrait) -> u128 {
        debug_assert_eq!((g.p, g.depth), (self.p, self.depth));
        self.encode_slice(&g.activities)
    }

    pub fn decode_into(&self, code: u128, out: &mut [u32]) {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.get(code, i);
        }
    }

    pub fn decode(&self, code: u128) -> Portrait {
        let mut acts = vec![0u32; self.vertices];
        self.decode_into(code, &mut acts);
        Portrait::from_raw(self.p, self.depth, acts)
    }

    /// Code of the truncation to `depth - 1` (drops the deepest level).
    pub fn truncate_code(&self, code: u128) -> u128 {
        if self.depth == 0 {
            return 0;
        }
        let last = (self.p as usize).pow(self.depth as u32 - 1);
        let s = self.bits as usize * last;
        if s >= 128 {
            0
        } else {
            code >> s
        }
    }
}

/// An element stored as its list of active vertices, for fast left
/// multiplication of packed portraits.
#[derive(Clone, Debug)]
pub struct SparseElement {
    /// `(path, activity)` for every vertex with nonzero activity.
    active: Vec<(Vec<u32>, u32)>,
}

impl SparseElement {
    pub fn from_portrait(g: &Portrait) -> Self {
        let p = g.p as usize;
        let mut active = Vec::new();
        let mut width = 1usize;
        for level in 0..g.depth {
            let off = level_offset(g.p, level);
            for j in 0..width {
                let a = g.activities[off + j];
                if a != 0 {
                    let mut path = vec![0u32; level];
                    let mut pos = j;
                    for slot in path.iter_mut().rev() {
                        *slot = (pos % p) as u32;
                        pos /= p;
                    }
                    active.push((path, a));
                }
            }
            width *= p;
        }
        SparseElement { active }
    }

    /// Packed code of `self * h`.
    #[inline]
    pub fn left_mul(&self, codec: &Codec, h: u128) -> u128 {
        let p = codec.p;
        let mut out = h;
        for (path, a) in &self.active {
            // u = h^{-1}(v), found level by level along the path of v
            let mut idx = 0usize;
            let mut pos = 0usize;
            for (level, &x) in path.iter().enumerate() {
                let act = codec.get(h, idx);
                let u = (x + p - act) % p;
                pos = pos * p as usize + u as usize;
                idx = level_offset(p, level + 1) + pos;
            }
            let cur = codec.get(out, idx);
            out = codec.with(out, idx, (cur + a) % p);
        }
        out
    }

    /// Replaces `h` by `self * h` in place; active vertices below `h`'s depth are ignored.
    pub fn left_mul_portrait(&self, h: &mut Portrait) {
        let p = h.p;
        let mut updates = Vec::with_capacity(self.active.len());
        for (path, a) in &self.active {
            if path.len() >= h.depth {
                continue;
            }
            let mut idx = 0usize;
            let mut pos = 0usize;
            for (level, &x) in path.iter().enumerate() {
                let act = h.activities[idx];
                let u = (x + p - act) % p;
                pos = pos * p as usize + u as usize;
                idx = level_offset(p, level + 1) + pos;
            }
            updates.push((idx, *a));
        }
        for (idx, a) in updates {
            h.activities[idx] = (h.activities[idx] + a) % p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2(depth: usize) -> Portrait {
        let mut g = Portrait::identity(2, depth);
        g.set_activity(&[], 1).unwrap();
        g
    }

    #[test]
    fn sizes_and_indices() {
        assert_eq!(vertex_count(2, 3), 7);
        assert_eq!(vertex_count(3, 3), 13);
        assert_eq!(vertex_index(2, &[1, 0]), 5);
        assert_eq!(vertex_index(3, &[2]), 3);
    }

    #[test]
    fn a_squared_is_trivial() {
        let a = a2(3);
        assert!(a.compose(&a).unwrap().is_identity());
        assert_eq!(a.inverse(), a);
        assert_eq!(Portrait::identity(2, 3).inverse(), Portrait::identity(2, 3));
    }

    #[test]
    fn inverse_of_a_over_three() {
        let mut a = Portrait::identity(3, 2);
        a.set_activity(&[], 1).unwrap();
        let inv = a.inverse();
        assert_eq!(inv.root_activity(), 2);
        assert!(a.compose(&inv).unwrap().is_identity());
    }

    #[test]
    fn left_action_convention() {
        // g acts at vertex "0" only, h is a: (g*h) applies a first.
        let mut g = Portrait::identity(2, 2);
        g.set_activity(&[0], 1).unwrap();
        let h = a2(2);
        let gh = g.compose(&h).unwrap();
        assert_eq!(gh.apply(&[1, 0]).unwrap(), g.apply(&h.apply(&[1, 0]).unwrap()).unwrap());
        assert_eq!(gh.activity_at(&[1]).unwrap(), 1);
        assert_eq!(gh.activity_at(&[0]).unwrap(), 0);
    }

    #[test]
    fn sections_and_rebuild() {
        let g = Portrait::new(2, 3, vec![1, 0, 1, 0, 0, 1, 1]).unwrap();
        assert_eq!(g.section(&[]).unwrap(), g);
        assert_eq!(g.section(&[1]).unwrap().activities(), &[1, 1, 1]);
        assert_eq!(g.section(&[0]).unwrap().activities(), &[0, 0, 0]);
        let s: Vec<_> = (0..2).map(|x| g.section(&[x]).unwrap()).collect();
        assert_eq!(Portrait::from_sections(1, &s).unwrap(), g);
        assert!(matches!(g.section(&[2]), Err(Error::BadVertex(_))));
        assert!(a2(3).section(&[0]).unwrap().is_identity());
    }

    #[test]
    fn codec_round_trip_and_order() {
        let c = Codec::new(3, 2).unwrap();
        let g = Portrait::new(3, 2, vec![2, 0, 1, 2]).unwrap();
        assert_eq!(c.decode(c.encode(&g)), g);
        let h = Portrait::new(3, 2, vec![2, 1, 0, 0]).unwrap();
        assert!(c.encode(&g) < c.encode(&h));
        assert_eq!(c.truncate_code(c.encode(&g)), 2);
        assert!(Codec::new(2, 8).is_err());
    }

    #[test]
    fn sparse_left_mul_matches_compose() {
        let c = Codec::new(3, 3).unwrap();
        let mut g = Portrait::identity(3, 3);
        g.set_activity(&[2, 0], 1).unwrap();
        g.set_activity(&[], 2).unwrap();
        let sg = SparseElement::from_portrait(&g);
        let acts: Vec<u32> = (0..13).map(|i| (i * 7 % 3) as u32).collect();
        let h = Portrait::new(3, 3, acts).unwrap();
        assert_eq!(c.decode(sg.left_mul(&c, c.encode(&h))), g.compose(&h).unwrap());
    }

    #[test]
    fn json_format() {
        let g = Portrait::new(2, 2, vec![1, 0, 1]).unwrap();
        assert_eq!(g.to_json(), r#"{"p":2,"depth":2,"activities":[1,0,1]}"#);
        assert_eq!(Portrait::from_json(&g.to_json()).unwrap(), g);
        assert!(Portrait::from_json(r#"{"p":2,"depth":2,"activities":[1,0]}"#).is_err());
    }
}
