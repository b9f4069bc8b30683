//! Union-find with rollback. Union by size, no path compression, so every
//! union can be undone in O(1) by popping a log entry. Used to maintain
//! connected components incrementally while color-set prefixes are pushed
//! and popped.

#[derive(Debug, Clone)]
pub struct RollbackDsu {
    parent: Vec<u32>,
    size: Vec<u32>,
    log: Vec<(u32, u32)>, // (absorbed root, new root)
}

impl RollbackDsu {
    pub fn new(n: usize) -> Self {
        RollbackDsu {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            log: Vec::new(),
        }
    }

    pub fn find(&self, mut v: u32) -> u32 {
        while self.parent[v as usize] != v {
            v = self.parent[v as usize];
        }
        v
    }

    /// Merges the sets of `a` and `b`. Returns the surviving root if the sets
    /// were distinct.
    pub fn union(&mut self, a: u32, b: u32) -> Option<u32> {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return None;
        }
        let (child, root) = if self.size[ra as usize] < self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[child as usize] = root;
        self.size[root as usize] += self.size[child as usize];
        self.log.push((child, root));
        Some(root)
    }

    /// Size of the set containing `v`.
    pub fn set_size(&self, v: u32) -> u32 {
        self.size[self.find(v) as usize]
    }

    /// Marks the current state; pass the value to [`rollback`](Self::rollback).
    pub fn checkpoint(&self) -> usize {
        self.log.len()
    }

    /// Undoes unions back to a checkpoint.
    pub fn rollback(&mut self, checkpoint: usize) {
        while self.log.len() > checkpoint {
            let (child, root) = self.log.pop().unwrap();
            self.parent[child as usize] = child;
            self.size[root as usize] -= self.size[child as usize];
        }
    }
}
