//! Addressable min-heaps keyed by vertex id.
//!
//! Items are ordered by `(key, vertex)`, so ties on the key are broken by the
//! smaller vertex id and every extraction sequence is deterministic.

use crate::error::{Error, Result};
use crate::graph::VertexId;

pub type Key = i64;

const NIL: usize = usize::MAX;

/// Which heap backs Dijkstra-style scans.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum HeapKind {
    /// Indexed 4-ary heap.
    #[default]
    Quaternary,
    Pairing,
}

pub trait AddressableHeap: Sized {
    /// Empty heap able to hold vertex ids `0..capacity`.
    fn with_capacity(capacity: usize) -> Self;

    fn push(&mut self, v: VertexId, key: Key) -> Result<()>;

    /// Removes a minimum item. Fails on an empty heap.
    fn extract_min(&mut self) -> Result<(VertexId, Key)>;

    /// Lowers the key of a queued vertex. Raising a key is rejected.
    fn decrease_key(&mut self, v: VertexId, key: Key) -> Result<()>;

    fn key(&self, v: VertexId) -> Option<Key>;

    fn len(&self) -> usize;

    fn contains(&self, v: VertexId) -> bool {
        self.key(v).is_some()
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Heap over `vertices`, keyed by `keys[v]`; ids must be below `keys.len()`.
    fn build(vertices: &[VertexId], keys: &[Key]) -> Result<Self> {
        let mut h = Self::with_capacity(keys.len());
        for &v in vertices {
            let key = *keys.get(v).ok_or_else(|| {
                Error::ContractViolation(format!("no key for vertex {v}"))
            })?;
            h.push(v, key)?;
        }
        Ok(h)
    }

    /// Heap holding every vertex `0..keys.len()`.
    fn build_all(keys: &[Key]) -> Self;
}

fn check_push(capacity: usize, present: bool, v: VertexId) -> Result<()> {
    if v >= capacity {
        return Err(Error::ContractViolation(format!(
            "vertex {v} beyond heap capacity {capacity}"
        )));
    }
    if present {
        return Err(Error::ContractViolation(format!("vertex {v} already queued")));
    }
    Ok(())
}

fn check_decrease(current: Option<Key>, v: VertexId, key: Key) -> Result<()> {
    match current {
        None => Err(Error::ContractViolation(format!("vertex {v} is not queued"))),
        Some(cur) if key > cur => Err(Error::ContractViolation(format!(
            "decrease_key would raise vertex {v} from {cur} to {key}"
        ))),
        Some(_) => Ok(()),
    }
}

fn empty_heap() -> Error {
    Error::ContractViolation("extract_min on an empty heap".into())
}

/// Indexed 4-ary heap with a position table.
#[derive(Clone, Debug)]
pub struct QuaternaryHeap {
    items: Vec<(Key, VertexId)>,
    pos: Vec<usize>,
}

impl QuaternaryHeap {
    fn place(&mut self, i: usize, item: (Key, VertexId)) {
        self.items[i] = item;
        self.pos[item.1] = i;
    }

    fn sift_up(&mut self, mut i: usize) {
        let item = self.items[i];
        while i > 0 {
            let parent = (i - 1) / 4;
            if self.items[parent] <= item {
                break;
            }
            let p = self.items[parent];
            self.place(i, p);
            i = parent;
        }
        self.place(i, item);
    }

    fn sift_down(&mut self, mut i: usize) {
        let len = self.items.len();
        let item = self.items[i];
        loop {
            let first = 4 * i + 1;
            if first >= len {
                break;
            }
            let last = (first + 4).min(len);
            let mut best = first;
            for c in first + 1..last {
                if self.items[c] < self.items[best] {
                    best = c;
                }
            }
            if self.items[best] >= item {
                break;
            }
            let b = self.items[best];
            self.place(i, b);
            i = best;
        }
        self.place(i, item);
    }
}

impl AddressableHeap for QuaternaryHeap {
    fn with_capacity(capacity: usize) -> Self {
        QuaternaryHeap {
            items: Vec::new(),
            pos: vec![NIL; capacity],
        }
    }

    fn build_all(keys: &[Key]) -> Self {
        let mut h = QuaternaryHeap {
            items: keys.iter().enumerate().map(|(v, &k)| (k, v)).collect(),
            pos: (0..keys.len()).collect(),
        };
        if h.items.len() > 1 {
            for i in (0..=(h.items.len() - 2) / 4).rev() {
                h.sift_down(i);
            }
        }
        h
    }

    fn push(&mut self, v: VertexId, key: Key) -> Result<()> {
        check_push(self.pos.len(), self.contains(v), v)?;
        self.items.push((key, v));
        self.sift_up(self.items.len() - 1);
        Ok(())
    }

    fn extract_min(&mut self) -> Result<(VertexId, Key)> {
        if self.items.is_empty() {
            return Err(empty_heap());
        }
        let (key, v) = self.items.swap_remove(0);
        self.pos[v] = NIL;
        if !self.items.is_empty() {
            self.sift_down(0);
        }
        Ok((v, key))
    }

    fn decrease_key(&mut self, v: VertexId, key: Key) -> Result<()> {
        check_decrease(self.key(v), v, key)?;
        let i = self.pos[v];
        self.items[i].0 = key;
        self.sift_up(i);
        Ok(())
    }

    fn key(&self, v: VertexId) -> Option<Key> {
        match self.pos.get(v) {
            Some(&i) if i != NIL => Some(self.items[i].0),
            _ => None,
        }
    }

    fn len(&self) -> usize {
        self.items.len()
    }
}

#[derive(Clone, Copy, Debug)]
struct PairingNode {
    key: Key,
    child: usize,
    next: usize,
    // parent when this node is a leftmost child, otherwise left sibling
    prev: usize,
    queued: bool,
}

const DETACHED: PairingNode = PairingNode {
    key: 0,
    child: NIL,
    next: NIL,
    prev: NIL,
    queued: false,
};

/// Pairing heap with two-pass merging; nodes live in an arena indexed by
/// vertex id.
#[derive(Clone, Debug)]
pub struct PairingHeap {
    nodes: Vec<PairingNode>,
    root: usize,
    len: usize,
    scratch: Vec<usize>,
}

impl PairingHeap {
    fn less(&self, a: usize, b: usize) -> bool {
        (self.nodes[a].key, a) < (self.nodes[b].key, b)
    }

    /// Links two detached roots and returns the new root.
    fn link(&mut self, a: usize, b: usize) -> usize {
        let (parent, child) = if self.less(a, b) { (a, b) } else { (b, a) };
        let first = self.nodes[parent].child;
        self.nodes[child].next = first;
        self.nodes[child].prev = parent;
        if first != NIL {
            self.nodes[first].prev = child;
        }
        self.nodes[parent].child = child;
        parent
    }

    fn merge_pairs(&mut self) -> usize {
        let mut roots = std::mem::take(&mut self.scratch);
        let mut paired = 0;
        let mut i = 0;
        while i + 1 < roots.len() {
            roots[paired] = self.link(roots[i], roots[i + 1]);
            paired += 1;
            i += 2;
        }
        if i < roots.len() {
            roots[paired] = roots[i];
            paired += 1;
        }
        let mut acc = NIL;
        for &r in roots[..paired].iter().rev() {
            acc = if acc == NIL { r } else { self.link(r, acc) };
        }
        roots.clear();
        self.scratch = roots;
        acc
    }
}

impl AddressableHeap for PairingHeap {
    fn with_capacity(capacity: usize) -> Self {
        PairingHeap {
            nodes: vec![DETACHED; capacity],
            root: NIL,
            len: 0,
            scratch: Vec::new(),
        }
    }

    fn build_all(keys: &[Key]) -> Self {
        let mut h = Self::with_capacity(keys.len());
        for (v, &k) in keys.iter().enumerate() {
            h.push(v, k).expect("fresh vertex ids");
        }
        h
    }

    fn push(&mut self, v: VertexId, key: Key) -> Result<()> {
        check_push(self.nodes.len(), self.contains(v), v)?;
        self.nodes[v] = PairingNode {
            key,
            queued: true,
            ..DETACHED
        };
        self.root = if self.root == NIL {
            v
        } else {
            self.link(self.root, v)
        };
        self.len += 1;
        Ok(())
    }

    fn extract_min(&mut self) -> Result<(VertexId, Key)> {
        if self.root == NIL {
            return Err(empty_heap());
        }
        let r = self.root;
        let mut c = self.nodes[r].child;
        while c != NIL {
            let next = self.nodes[c].next;
            self.nodes[c].next = NIL;
            self.nodes[c].prev = NIL;
            self.scratch.push(c);
            c = next;
        }
        let key = self.nodes[r].key;
        self.nodes[r] = DETACHED;
        self.root = self.merge_pairs();
        self.len -= 1;
        Ok((r, key))
    }

    fn decrease_key(&mut self, v: VertexId, key: Key) -> Result<()> {
        check_decrease(self.key(v), v, key)?;
        self.nodes[v].key = key;
        if v == self.root {
            return Ok(());
        }
        let prev = self.nodes[v].prev;
        let next = self.nodes[v].next;
        if self.nodes[prev].child == v {
            self.nodes[prev].child = next;
        } else {
            self.nodes[prev].next = next;
        }
        if next != NIL {
            self.nodes[next].prev = prev;
        }
        self.nodes[v].next = NIL;
        self.nodes[v].prev = NIL;
        self.root = self.link(self.root, v);
        Ok(())
    }

    fn key(&self, v: VertexId) -> Option<Key> {
        self.nodes
            .get(v)
            .filter(|node| node.queued)
            .map(|node| node.key)
    }

    fn len(&self) -> usize {
        self.len
    }
}
