use std::collections::HashMap;

use sha2::{Digest, Sha256};

use super::{add, dart, sub, TorusDiagram};

impl TorusDiagram {
    /// Traversal code of one graph component, read from `start`. The crossing
    /// reached first through slot `s` numbers its slots from `s`, and positions
    /// are measured from the start crossing, so relabeling crossings, rotating
    /// slot labels and re-choosing lifts all leave the code unchanged.
    fn traversal_code(&self, start: usize) -> Vec<i64> {
        let mut seen: HashMap<usize, (usize, usize, [i64; 2])> = HashMap::new();
        let mut order = vec![start / 4];
        seen.insert(start / 4, (0, start % 4, [0, 0]));
        let mut code = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            i += 1;
            let (_, rot, pos) = seen[&c];
            code.push(i64::from(self.over_even[c] ^ (rot % 2 == 1)));
            for j in 0..4 {
                let h = dart(c, rot + j);
                let p = self.partner[h];
                let c2 = p / 4;
                let there = add(pos, self.disp[h]);
                let (label, rot2, pos2) = *seen.entry(c2).or_insert_with(|| {
                    order.push(c2);
                    (order.len() - 1, p % 4, there)
                });
                let res = sub(there, pos2);
                code.extend([label as i64, ((p % 4 + 4 - rot2) % 4) as i64, res[0], res[1]]);
            }
        }
        code
    }

    /// Canonical codes of the graph components, sorted.
    pub(crate) fn canonical_codes(&self) -> Vec<Vec<i64>> {
        let (members, _, _) = self.graph_components();
        let mut codes: Vec<Vec<i64>> = members
            .iter()
            .map(|cs| {
                cs.iter()
                    .flat_map(|&c| (0..4).map(move |s| dart(c, s)))
                    .map(|h| self.traversal_code(h))
                    .min()
                    .expect("components are nonempty")
            })
            .collect();
        codes.sort_unstable();
        codes
    }

    /// SHA-256 of the canonical form, hex encoded. Equal for diagrams that
    /// differ by relabeling or translation.
    pub fn canonical_hash(&self) -> String {
        let mut hasher = Sha256::new();
        for code in self.canonical_codes() {
            hasher.update((code.len() as u64).to_le_bytes());
            for x in code {
                hasher.update(x.to_le_bytes());
            }
        }
        hasher.update(u64::MAX.to_le_bytes());
        for l in &self.loops {
            hasher.update(l[0].to_le_bytes());
            hasher.update(l[1].to_le_bytes());
        }
        hex::encode(hasher.finalize())
    }
}
