//! Dense compressed adjacency over sparse node ids.

use alloc::vec::Vec;

pub(crate) struct Csr<Id> {
    ids: Vec<Id>,
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl<Id: Ord + Copy> Csr<Id> {
    /// `nodes` must be sorted and deduplicated. Edges whose endpoints are not
    /// in `nodes` are skipped.
    pub(crate) fn build<N, E>(nodes: N, edges: E) -> Self
    where
        N: IntoIterator<Item = Id>,
        E: IntoIterator<Item = (Id, Id)>,
    {
        let ids: Vec<Id> = nodes.into_iter().collect();
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        let n = ids.len();
        let index = |id: Id| ids.binary_search(&id).ok();
        let mut degree = alloc::vec![0u32; n + 1];
        let mut pairs = Vec::new();
        for (src, dst) in edges {
            if let (Some(s), Some(d)) = (index(src), index(dst)) {
                degree[s + 1] += 1;
                pairs.push((s as u32, d as u32));
            }
        }
        for i in 0..n {
            degree[i + 1] += degree[i];
        }
        let offsets = degree;
        let mut cursor: Vec<u32> = offsets[..n].to_vec();
        let mut targets = alloc::vec![0u32; pairs.len()];
        for (s, d) in pairs {
            let slot = &mut cursor[s as usize];
            targets[*slot as usize] = d;
            *slot += 1;
        }
        Csr { ids, offsets, targets }
    }

    pub(crate) fn len(&self) -> usize {
        self.ids.len()
    }

    pub(crate) fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub(crate) fn index_of(&self, id: Id) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub(crate) fn id(&self, index: usize) -> Id {
        self.ids[index]
    }

    pub(crate) fn successors(&self, index: usize) -> &[u32] {
        let lo = self.offsets[index] as usize;
        let hi = self.offsets[index + 1] as usize;
        &self.targets[lo..hi]
    }

    /// The same node set with every edge reversed.
    pub(crate) fn reversed(&self) -> Self {
        let n = self.ids.len();
        let mut degree = alloc::vec![0u32; n + 1];
        for &d in &self.targets {
            degree[d as usize + 1] += 1;
        }
        for i in 0..n {
            degree[i + 1] += degree[i];
        }
        let mut cursor: Vec<u32> = degree[..n].to_vec();
        let mut targets = alloc::vec![0u32; self.targets.len()];
        for s in 0..n {
            for &d in self.successors(s) {
                let slot = &mut cursor[d as usize];
                targets[*slot as usize] = s as u32;
                *slot += 1;
            }
        }
        Csr { ids: self.ids.clone(), offsets: degree, targets }
    }
}
