//! Uniform-grid index over conservative float boxes. Used only to prune
//! candidate pairs before exact predicates run.

use std::collections::HashMap;

use super::geometry::FloatBox;

pub(crate) struct BoxIndex {
    cell: f64,
    origin: [f64; 3],
    cells: HashMap<[i64; 3], Vec<usize>>,
    boxes: Vec<FloatBox>,
    key_lo: [i64; 3],
    key_hi: [i64; 3],
}

impl BoxIndex {
    pub fn new(boxes: Vec<FloatBox>) -> Self {
        let mut origin = [f64::INFINITY; 3];
        let mut ext = 0.0f64;
        for b in &boxes {
            for a in 0..3 {
                origin[a] = origin[a].min(b.lo[a]);
                ext = ext.max(b.hi[a] - b.lo[a]);
            }
        }
        if boxes.is_empty() {
            origin = [0.0; 3];
        }
        let mean: f64 = if boxes.is_empty() {
            1.0
        } else {
            boxes.iter().map(|b| (0..3).map(|a| b.hi[a] - b.lo[a]).fold(0.0, f64::max)).sum::<f64>()
                / boxes.len() as f64
        };
        let cell = if mean > 0.0 { (mean * 1.5).max(ext / 32.0) } else { ext.max(1.0) };
        let mut index = Self {
            cell,
            origin,
            cells: HashMap::new(),
            boxes: Vec::new(),
            key_lo: [i64::MIN; 3],
            key_hi: [i64::MAX; 3],
        };
        let mut key_lo = [i64::MAX; 3];
        let mut key_hi = [i64::MIN; 3];
        for (i, b) in boxes.iter().enumerate() {
            for key in index.keys(b) {
                for a in 0..3 {
                    key_lo[a] = key_lo[a].min(key[a]);
                    key_hi[a] = key_hi[a].max(key[a]);
                }
                index.cells.entry(key).or_default().push(i);
            }
        }
        if !boxes.is_empty() {
            index.key_lo = key_lo;
            index.key_hi = key_hi;
        }
        index.boxes = boxes;
        index
    }

    fn keys(&self, b: &FloatBox) -> Vec<[i64; 3]> {
        let key = |v: f64, a: usize| {
            (((v - self.origin[a]) / self.cell).floor() as i64).clamp(self.key_lo[a].saturating_sub(1), self.key_hi[a].saturating_add(1))
        };
        let lo: [i64; 3] = std::array::from_fn(|a| key(b.lo[a], a));
        let hi: [i64; 3] = std::array::from_fn(|a| key(b.hi[a], a));
        let mut out = Vec::new();
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                for z in lo[2]..=hi[2] {
                    out.push([x, y, z]);
                }
            }
        }
        out
    }

    /// Ids of indexed boxes overlapping `b`, sorted and deduplicated.
    pub fn query(&self, b: &FloatBox) -> Vec<usize> {
        let mut out = Vec::new();
        if self.boxes.is_empty() {
            return out;
        }
        for key in self.keys(b) {
            if let Some(ids) = self.cells.get(&key) {
                out.extend(ids.iter().copied().filter(|&i| self.boxes[i].overlaps(b)));
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}
