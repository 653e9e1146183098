//! Building relativized Boolean algebras as disjoint unions of Boolean
//! algebras glued along a coherent family of homomorphisms.
//!
//! Blocks are indexed by a finite meet-semilattice whose order is read off the
//! homomorphisms: `j ≤ i` exactly when there is a map `i → j`. Cross-block
//! operations push both arguments down to the meet of their indices and
//! operate there.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{Algebra, ElementId};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Block {
    pub name: String,
    pub algebra: Algebra,
}

/// Homomorphism between blocks, `map[x]` is the image of element `x` of
/// block `from` inside block `to`.
#[derive(Debug, Clone)]
pub struct BlockHom {
    pub from: usize,
    pub to: usize,
    pub map: Vec<ElementId>,
}

struct Index {
    homs: BTreeMap<(usize, usize), Vec<ElementId>>,
    glb: Vec<Vec<usize>>,
    top: usize,
    bottom: usize,
}

fn glue_err(msg: impl Into<String>) -> Error {
    Error::Glue(msg.into())
}

fn check_hom(blocks: &[Block], h: &BlockHom) -> Result<()> {
    let (a, b) = (&blocks[h.from].algebra, &blocks[h.to].algebra);
    let name = format!("{} -> {}", blocks[h.from].name, blocks[h.to].name);
    if h.map.len() != a.size() || h.map.iter().any(|y| y.index() >= b.size()) {
        return Err(glue_err(format!("{name}: map is not total into the target block")));
    }
    let f = |x: ElementId| h.map[x.index()];
    if f(a.top()) != b.top() {
        return Err(glue_err(format!("{name}: does not map 1 to 1")));
    }
    for x in a.elements() {
        if f(a.neg(x)) != b.neg(f(x)) {
            return Err(glue_err(format!("{name}: does not commute with ¬ at {}", a.label(x))));
        }
        for y in a.elements() {
            if f(a.meet(x, y)) != b.meet(f(x), f(y)) || f(a.join(x, y)) != b.join(f(x), f(y)) {
                return Err(glue_err(format!(
                    "{name}: not a homomorphism at ({}, {})",
                    a.label(x),
                    a.label(y)
                )));
            }
        }
    }
    Ok(())
}

fn build_index(blocks: &[Block], homs: &[BlockHom]) -> Result<Index> {
    let n = blocks.len();
    let mut map: BTreeMap<(usize, usize), Vec<ElementId>> = BTreeMap::new();
    for h in homs {
        if h.from >= n || h.to >= n {
            return Err(glue_err("homomorphism refers to a missing block"));
        }
        if h.from == h.to {
            let id: Vec<ElementId> = blocks[h.from].algebra.elements().collect();
            if h.map != id {
                return Err(glue_err(format!("self-map on {} is not the identity", blocks[h.from].name)));
            }
            continue;
        }
        check_hom(blocks, h)?;
        if map.insert((h.from, h.to), h.map.clone()).is_some() {
            return Err(glue_err("duplicate homomorphism"));
        }
    }
    // Close under composition, checking coherence of the given composites.
    loop {
        let mut added = false;
        let edges: Vec<((usize, usize), Vec<ElementId>)> =
            map.iter().map(|(k, v)| (*k, v.clone())).collect();
        for ((i, j), hij) in &edges {
            for ((j2, k), hjk) in &edges {
                if j != j2 {
                    continue;
                }
                if i == k {
                    return Err(glue_err(format!(
                        "blocks {} and {} map into each other",
                        blocks[*i].name, blocks[*j].name
                    )));
                }
                let comp: Vec<ElementId> = hij.iter().map(|x| hjk[x.index()]).collect();
                match map.get(&(*i, *k)) {
                    Some(existing) if *existing != comp => {
                        return Err(glue_err(format!(
                            "incoherent homomorphisms: {} -> {} differs from the composite through {}",
                            blocks[*i].name, blocks[*k].name, blocks[*j].name
                        )));
                    }
                    Some(_) => {}
                    None => {
                        map.insert((*i, *k), comp);
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    let below = |i: usize, j: usize| i == j || map.contains_key(&(j, i)); // i ≤ j
    let mut glb = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&k| below(k, i) && below(k, j)).collect();
            let greatest = lower.iter().copied().find(|&g| lower.iter().all(|&k| below(k, g)));
            glb[i][j] = greatest.ok_or_else(|| {
                glue_err(format!(
                    "blocks {} and {} have no greatest common lower block",
                    blocks[i].name, blocks[j].name
                ))
            })?;
        }
    }
    let top = (0..n)
        .find(|&t| (0..n).all(|i| below(i, t)))
        .ok_or_else(|| glue_err("block index has no greatest block"))?;
    let bottom = (0..n)
        .find(|&b| (0..n).all(|i| below(b, i)))
        .ok_or_else(|| glue_err("block index has no least block"))?;
    Ok(Index { homs: map, glb, top, bottom })
}

/// Glues Boolean blocks into one algebra. The result is verified against
/// rb1–rb5 before it is returned.
pub fn glue(blocks: &[Block], homs: &[BlockHom]) -> Result<Algebra> {
    if blocks.is_empty() {
        return Err(glue_err("no blocks"));
    }
    for b in blocks {
        let r = b.algebra.check_boolean();
        if !r.passed() {
            return Err(glue_err(format!("block {} is not Boolean:\n{r}", b.name)));
        }
    }
    let index = build_index(blocks, homs)?;
    let mut offset = Vec::with_capacity(blocks.len());
    let mut owner = Vec::new();
    let mut labels = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        offset.push(labels.len());
        for x in b.algebra.elements() {
            owner.push((i, x));
            labels.push(b.algebra.label(x).to_string());
        }
    }
    let push = |from: usize, to: usize, x: ElementId| -> ElementId {
        if from == to {
            x
        } else {
            index.homs[&(from, to)][x.index()]
        }
    };
    let binary = |a: usize, b: usize, join: bool| -> usize {
        let ((i, x), (j, y)) = (owner[a], owner[b]);
        let k = index.glb[i][j];
        let (x, y) = (push(i, k, x), push(j, k, y));
        let alg = &blocks[k].algebra;
        let r = if join { alg.join(x, y) } else { alg.meet(x, y) };
        offset[k] + r.index()
    };
    let top = offset[index.top] + blocks[index.top].algebra.top().index();
    let bottom = offset[index.bottom] + blocks[index.bottom].algebra.bottom().index();
    let out = Algebra::from_fn(
        labels,
        |a, b| binary(a, b, false),
        |a, b| binary(a, b, true),
        |a| {
            let (i, x) = owner[a];
            offset[i] + blocks[i].algebra.neg(x).index()
        },
        top,
        bottom,
    )?;
    let report = out.check_rba();
    if !report.passed() {
        return Err(glue_err(format!("glued algebra violates the RBA laws:\n{report}")));
    }
    Ok(out)
}

/// Powerset block over `atoms` with labels suffixed by `_{block}`.
pub fn powerset_block(name: &str, atoms: &[&str]) -> Block {
    let base = Algebra::powerset(atoms);
    let labels = base.labels().iter().map(|l| format!("{l}_{name}")).collect();
    Block {
        name: name.to_string(),
        algebra: base.with_labels(labels).expect("same size"),
    }
}

/// The Boolean homomorphism `P(A) → P(B)` induced by a map on atoms
/// `f: B → A`, sending `S` to `f⁻¹(S)`. Element indices are bit patterns as
/// produced by [`Algebra::powerset`].
pub fn atom_hom(from: usize, to: usize, source_atoms: usize, atom_map: &[usize]) -> BlockHom {
    let map = (0..1usize << source_atoms)
        .map(|s| {
            let img = atom_map
                .iter()
                .enumerate()
                .filter(|(_, &a)| s >> a & 1 == 1)
                .fold(0usize, |acc, (b, _)| acc | 1 << b);
            ElementId::from(img)
        })
        .collect();
    BlockHom { from, to, map }
}

/// A random glued RBA with at most `max_size` elements: a chain of two or
/// three blocks or a diamond of four, with random atom maps.
pub fn random_glued<R: Rng>(rng: &mut R, max_size: usize) -> Algebra {
    loop {
        if let Some(a) = try_random_glued(rng, max_size) {
            return a;
        }
    }
}

fn try_random_glued<R: Rng>(rng: &mut R, max_size: usize) -> Option<Algebra> {
    let shape = rng.gen_range(0..3);
    // (atom counts, covering edges from higher to lower block)
    let (atoms, edges): (Vec<usize>, Vec<(usize, usize)>) = match shape {
        0 => (vec![rng.gen_range(1..=3), rng.gen_range(0..=2)], vec![(0, 1)]),
        1 => (
            vec![rng.gen_range(1..=3), rng.gen_range(1..=2), rng.gen_range(0..=2)],
            vec![(0, 1), (1, 2)],
        ),
        _ => (
            vec![rng.gen_range(1..=3), rng.gen_range(1..=2), rng.gen_range(1..=2), rng.gen_range(0..=1)],
            vec![(0, 1), (0, 2), (1, 3), (2, 3)],
        ),
    };
    let size: usize = atoms.iter().map(|&k| 1usize << k).sum();
    if size > max_size {
        return None;
    }
    let names = ["T", "M", "N", "L"];
    let atom_names = ["a", "b", "c"];
    let blocks: Vec<Block> = atoms
        .iter()
        .enumerate()
        .map(|(i, &k)| powerset_block(names[i], &atom_names[..k]))
        .collect();
    // atom_maps[(i, j)]: atoms of j -> atoms of i
    let mut atom_maps: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &(i, j) in &edges {
        if atoms[i] == 0 && atoms[j] > 0 {
            return None;
        }
        let f: Vec<usize> = (0..atoms[j]).map(|_| rng.gen_range(0..atoms[i])).collect();
        atom_maps.insert((i, j), f);
    }
    if shape == 2 {
        // Make the square commute: T←M←L must equal T←N←L on atoms of L.
        let via_m: Vec<usize> = atom_maps[&(1, 3)].iter().map(|&a| atom_maps[&(0, 1)][a]).collect();
        let l_to_n = atom_maps[&(2, 3)].clone();
        let mut n_to_t: Vec<Option<usize>> = vec![None; atoms[2]];
        for (l, &nn) in l_to_n.iter().enumerate() {
            match n_to_t[nn] {
                Some(t) if t != via_m[l] => return None,
                _ => n_to_t[nn] = Some(via_m[l]),
            }
        }
        let n_to_t: Vec<usize> = n_to_t
            .into_iter()
            .map(|t| t.unwrap_or_else(|| rng.gen_range(0..atoms[0])))
            .collect();
        atom_maps.insert((0, 2), n_to_t);
        // The meet of M and N must be L: no other common lower block exists.
    }
    let mut homs: Vec<BlockHom> = atom_maps
        .iter()
        .map(|(&(i, j), f)| atom_hom(i, j, atoms[i], f))
        .collect();
    homs.shuffle(rng);
    glue(&blocks, &homs).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_block_is_unchanged() {
        let b = powerset_block("B", &["x", "y"]);
        let g = glue(std::slice::from_ref(&b), &[]).unwrap();
        assert_eq!(g, b.algebra);
    }

    #[test]
    fn rejects_non_homomorphism() {
        let b = powerset_block("B", &["x"]);
        let r = powerset_block("R", &["y"]);
        // constant map to 1 does not commute with negation
        let bad = BlockHom { from: 0, to: 1, map: vec![ElementId(1), ElementId(1)] };
        let err = glue(&[b, r], &[bad]).unwrap_err();
        assert!(matches!(err, Error::Glue(m) if m.contains("¬")));
    }

    #[test]
    fn rejects_incoherent_family() {
        let t = powerset_block("T", &["a", "b"]);
        let m = powerset_block("M", &["a"]);
        let l = powerset_block("L", &["a"]);
        let homs = vec![
            atom_hom(0, 1, 2, &[0]),
            atom_hom(1, 2, 1, &[0]),
            atom_hom(0, 2, 2, &[1]),
        ];
        let err = glue(&[t, m, l], &homs).unwrap_err();
        assert!(matches!(err, Error::Glue(m) if m.contains("incoherent")));
    }

    #[test]
    fn rejects_index_without_meets() {
        let t = powerset_block("T", &["a"]);
        let m = powerset_block("M", &["a"]);
        let n = powerset_block("N", &["a"]);
        // M and N have no common lower block
        let homs = vec![atom_hom(0, 1, 1, &[0]), atom_hom(0, 2, 1, &[0])];
        let err = glue(&[t, m, n], &homs).unwrap_err();
        assert!(matches!(err, Error::Glue(m) if m.contains("greatest common lower")));
    }

    #[test]
    fn random_glued_algebras_are_rbas() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_glued(&mut rng, 20);
            assert!(a.size() <= 20);
            assert!(a.check_rba().passed());
        }
    }
}
