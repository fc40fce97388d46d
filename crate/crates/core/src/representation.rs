//! Leaf representations `M -> N^c x (B x Z)^d`.
//!
//! Each leaf of the diagram tree yields a homomorphism built step by step.
//! Starting with every generator active:
//!
//! * a dot on `a_s` adds one `N` factor; `a_s` maps to `1` there, every
//!   other generator to `0`, and `a_s` retires;
//! * an arc joining `a_x` and `a_y` (`x < y`) adds a `B` and a `Z` factor;
//!   `a_x -> (p, 1)`, `a_y -> (q, 0)`, active `a_l` with `l < x` map to
//!   `(p, 0)`, active `a_l` with `l > y` to `(q, 0)`, retired generators to
//!   the identity; `a_x` and `a_y` retire;
//! * finally each generator never used by the diagram gets its own `N`
//!   factor, which it counts.
//!
//! `N` and `Z` factors are stored additively. The product over all leaves
//! is injective on the monoid, so comparing images decides word equality.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value as Json};

use crate::bicyclic::Bicyclic;
use crate::diagram::{enumerate_leaves, Diagram, Placement};
use crate::error::{Error, Result};
use crate::word::{all_words, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Nat,
    Bicyclic,
    Int,
}

impl ComponentKind {
    pub fn tag(self) -> &'static str {
        match self {
            ComponentKind::Nat => "N",
            ComponentKind::Bicyclic => "B",
            ComponentKind::Int => "Z",
        }
    }
}

/// Where a factor comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    /// Created by the step with this index (0-based).
    Step { index: usize, placement: Placement },
    /// Free factor of a generator the diagram never uses.
    Unused { generator: usize },
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Step { index, placement } => write!(f, "step {index}: {placement}"),
            Origin::Unused { generator } => write!(f, "unused a{generator}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Component {
    pub kind: ComponentKind,
    pub origin: Origin,
}

/// One coordinate of an image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Value {
    Nat(u64),
    Bic(Bicyclic),
    Int(i64),
}

impl Value {
    fn identity(kind: ComponentKind) -> Value {
        match kind {
            ComponentKind::Nat => Value::Nat(0),
            ComponentKind::Bicyclic => Value::Bic(Bicyclic::IDENTITY),
            ComponentKind::Int => Value::Int(0),
        }
    }

    pub fn is_identity(self) -> bool {
        matches!(self, Value::Nat(0) | Value::Int(0)) || self == Value::Bic(Bicyclic::IDENTITY)
    }

    fn mul(self, rhs: Value) -> Value {
        match (self, rhs) {
            (Value::Nat(a), Value::Nat(b)) => Value::Nat(a.checked_add(b).expect("N exponent overflow")),
            (Value::Int(a), Value::Int(b)) => Value::Int(a.checked_add(b).expect("Z exponent overflow")),
            (Value::Bic(a), Value::Bic(b)) => Value::Bic(a * b),
            (a, b) => panic!("component kind mismatch: {a:?} * {b:?}"),
        }
    }

    fn to_json(self) -> Json {
        match self {
            Value::Nat(e) => json!(e),
            Value::Int(e) => json!(e),
            Value::Bic(b) => json!({"p": b.p, "q": b.q}),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Nat(e) => write!(f, "N:{e}"),
            Value::Bic(b) => write!(f, "B:{}", b.compact()),
            Value::Int(e) => write!(f, "Z:{e}"),
        }
    }
}

/// An element of `N^c x (B x Z)^d`, in schema order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ImageTuple(pub Vec<Value>);

impl ImageTuple {
    pub fn identity(schema: &[Component]) -> Self {
        ImageTuple(schema.iter().map(|c| Value::identity(c.kind)).collect())
    }

    pub fn values(&self) -> &[Value] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|v| v.is_identity())
    }

    /// Right-multiplies in place: `self <- self · rhs`.
    pub fn mul_assign(&mut self, rhs: &ImageTuple) {
        for (a, &b) in self.0.iter_mut().zip(&rhs.0) {
            *a = a.mul(b);
        }
    }

    pub fn mul(&self, rhs: &ImageTuple) -> ImageTuple {
        let mut out = self.clone();
        out.mul_assign(rhs);
        out
    }

    pub fn to_json(&self) -> Json {
        Json::Array(self.0.iter().map(|v| v.to_json()).collect())
    }
}

impl fmt::Display for ImageTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (pos, v) in self.0.iter().enumerate() {
            if pos > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// The homomorphism attached to one leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafRepresentation {
    leaf: Diagram,
    schema: Vec<Component>,
    /// `images[g - 1]` is the image of `a_g`.
    images: Vec<ImageTuple>,
}

/// Builds the representation of a leaf.
pub fn build_representation(d: &Diagram) -> Result<LeafRepresentation> {
    if !d.is_leaf() {
        return Err(Error::NotALeaf(d.id()));
    }
    let n = d.rank();
    let mut schema = Vec::new();
    let mut columns: Vec<Vec<Value>> = vec![Vec::new(); n];
    let mut active = vec![true; n + 1];

    for (index, &placement) in d.placements().iter().enumerate() {
        let origin = Origin::Step { index, placement };
        match placement {
            Placement::Dot { generator: s } => {
                schema.push(Component { kind: ComponentKind::Nat, origin });
                for g in 1..=n {
                    columns[g - 1].push(Value::Nat(u64::from(g == s)));
                }
                active[s] = false;
            }
            Placement::Arc { x, y } => {
                schema.push(Component { kind: ComponentKind::Bicyclic, origin });
                schema.push(Component { kind: ComponentKind::Int, origin });
                for g in 1..=n {
                    let (b, z) = match g {
                        _ if g == x => (Bicyclic::P, 1),
                        _ if g == y => (Bicyclic::Q, 0),
                        _ if !active[g] => (Bicyclic::IDENTITY, 0),
                        _ if g < x => (Bicyclic::P, 0),
                        _ if g > y => (Bicyclic::Q, 0),
                        _ => unreachable!("generator a{g} inside arc ({x},{y}) is still active"),
                    };
                    columns[g - 1].push(Value::Bic(b));
                    columns[g - 1].push(Value::Int(z));
                }
                active[x] = false;
                active[y] = false;
            }
        }
    }
    for free in d.unused_generators() {
        schema.push(Component { kind: ComponentKind::Nat, origin: Origin::Unused { generator: free } });
        for g in 1..=n {
            columns[g - 1].push(Value::Nat(u64::from(g == free)));
        }
    }
    Ok(LeafRepresentation { leaf: d.clone(), schema, images: columns.into_iter().map(ImageTuple).collect() })
}

impl LeafRepresentation {
    pub fn leaf(&self) -> &Diagram {
        &self.leaf
    }

    pub fn rank(&self) -> usize {
        self.leaf.rank()
    }

    pub fn schema(&self) -> &[Component] {
        &self.schema
    }

    /// `(c, d)`: number of `N` factors and of `B x Z` pairs.
    pub fn counts(&self) -> (usize, usize) {
        let c = self.schema.iter().filter(|c| c.kind == ComponentKind::Nat).count();
        let d = self.schema.iter().filter(|c| c.kind == ComponentKind::Bicyclic).count();
        (c, d)
    }

    /// Image of the generator `a_g`.
    pub fn generator_image(&self, g: usize) -> &ImageTuple {
        &self.images[g - 1]
    }

    pub fn identity(&self) -> ImageTuple {
        ImageTuple::identity(&self.schema)
    }

    /// Image of a word: componentwise product of generator images.
    pub fn image(&self, w: &Word) -> Result<ImageTuple> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch { left: self.rank(), right: w.rank() });
        }
        Ok(self.image_raw(w.letters()))
    }

    pub(crate) fn image_raw(&self, letters: &[u8]) -> ImageTuple {
        let mut acc = self.identity();
        for &l in letters {
            acc.mul_assign(&self.images[usize::from(l) - 1]);
        }
        acc
    }

    /// Image of `a_y a_x` for the arc created by step `step_index`.
    pub fn arc_element_image(&self, step_index: usize) -> Result<ImageTuple> {
        match self.leaf.placements().get(step_index) {
            Some(&Placement::Arc { x, y }) => Ok(self.image_raw(&[y as u8, x as u8])),
            _ => Err(Error::NotAnArcStep(step_index)),
        }
    }

    /// Position of the `Z` factor created by step `step_index`.
    pub fn int_component_of(&self, step_index: usize) -> Option<usize> {
        self.schema.iter().position(|c| {
            c.kind == ComponentKind::Int && matches!(c.origin, Origin::Step { index, .. } if index == step_index)
        })
    }

    /// True if the generator images satisfy every defining relation.
    pub fn respects_relations(&self) -> bool {
        let n = self.rank() as u8;
        for i in 1..=n {
            for k in i..=n {
                for j in k..=n {
                    let a = self.image_raw(&[j, i, k]);
                    if a != self.image_raw(&[j, k, i]) || a != self.image_raw(&[k, j, i]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// A copy whose image of `a_g` has `p` and `q` exchanged in every `B`
    /// factor. Used to check that the verification suites notice a broken
    /// representation.
    pub fn with_swapped_generator(&self, g: usize) -> LeafRepresentation {
        let mut out = self.clone();
        for v in &mut out.images[g - 1].0 {
            if let Value::Bic(b) = v {
                *b = Bicyclic::new(b.q, b.p);
            }
        }
        out
    }

    /// JSON export: `{"leaf", "schema": [{"kind", "origin"}], "images": {"1": [...]}}`.
    pub fn to_json(&self) -> Json {
        let schema: Vec<Json> = self
            .schema
            .iter()
            .map(|c| json!({"kind": c.kind.tag(), "origin": c.origin.to_string()}))
            .collect();
        let images: serde_json::Map<String, Json> =
            self.images.iter().enumerate().map(|(g, img)| ((g + 1).to_string(), img.to_json())).collect();
        let (c, d) = self.counts();
        json!({"leaf": self.leaf.id(), "c": c, "d": d, "schema": schema, "images": images})
    }
}

/// All leaf representations of one rank; their product embeds the monoid.
#[derive(Debug, Clone)]
pub struct Embedding {
    n: usize,
    reps: Vec<LeafRepresentation>,
}

impl Embedding {
    pub fn new(n: usize) -> Result<Self> {
        let reps = enumerate_leaves(n)?.iter().map(build_representation).collect::<Result<_>>()?;
        Ok(Embedding { n, reps })
    }

    /// An embedding over an explicit list of representations.
    pub fn from_representations(n: usize, reps: Vec<LeafRepresentation>) -> Self {
        Embedding { n, reps }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn representations(&self) -> &[LeafRepresentation] {
        &self.reps
    }

    pub fn find(&self, leaf_id: &str) -> Option<&LeafRepresentation> {
        self.reps.iter().find(|r| r.leaf.id() == leaf_id)
    }

    /// Images under every leaf, in leaf order.
    pub fn key(&self, w: &Word) -> Result<Vec<ImageTuple>> {
        self.reps.iter().map(|r| r.image(w)).collect()
    }

    pub(crate) fn key_raw(&self, letters: &[u8]) -> Vec<ImageTuple> {
        self.reps.iter().map(|r| r.image_raw(letters)).collect()
    }

    pub fn eq(&self, w: &Word, v: &Word) -> Result<bool> {
        for word in [w, v] {
            if word.rank() != self.n {
                return Err(Error::RankMismatch { left: self.n, right: word.rank() });
            }
        }
        Ok(self.reps.iter().all(|r| r.image_raw(w.letters()) == r.image_raw(v.letters())))
    }
}

/// Decides `w = v` in the monoid of rank `n` through the leaf representations.
pub fn eq_via_embedding(n: usize, w: &Word, v: &Word) -> Result<bool> {
    Embedding::new(n)?.eq(w, v)
}

/// Searches words of length `1..=max_len` for `(w, v)` identified by `r1`
/// but separated by `r2`. Pairs are tried in order of length, then `w`,
/// then `v` (lexicographic, `w < v`); the first hit is returned.
pub fn incomparability_witness(
    r1: &LeafRepresentation,
    r2: &LeafRepresentation,
    max_len: usize,
) -> Result<Option<(Word, Word)>> {
    if r1.rank() != r2.rank() {
        return Err(Error::RankMismatch { left: r1.rank(), right: r2.rank() });
    }
    if r1.leaf == r2.leaf {
        return Err(Error::SameLeaf(r1.leaf.id()));
    }
    let n = r1.rank();
    for len in 1..=max_len {
        let words: Vec<Vec<u8>> = all_words(n, len).collect();
        let mut groups: HashMap<ImageTuple, Vec<usize>> = HashMap::new();
        for (idx, w) in words.iter().enumerate() {
            groups.entry(r1.image_raw(w)).or_default().push(idx);
        }
        let second: Vec<ImageTuple> = words.iter().map(|w| r2.image_raw(w)).collect();
        let mut best: Option<(usize, usize)> = None;
        for members in groups.values() {
            // members are ascending; the first w with a separated partner wins in this group
            'outer: for (pos, &a) in members.iter().enumerate() {
                for &b in &members[pos + 1..] {
                    if second[a] != second[b] {
                        if best.is_none_or(|cur| (a, b) < cur) {
                            best = Some((a, b));
                        }
                        break 'outer;
                    }
                }
            }
        }
        if let Some((a, b)) = best {
            return Ok(Some((Word::from_raw(n, words[a].clone()), Word::from_raw(n, words[b].clone()))));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(n: usize, id: &str) -> LeafRepresentation {
        build_representation(&Diagram::parse_id(n, id).unwrap()).unwrap()
    }

    fn w(n: usize, s: &str) -> Word {
        Word::parse(n, s).unwrap()
    }

    fn kinds(r: &LeafRepresentation) -> String {
        r.schema().iter().map(|c| c.kind.tag()).collect()
    }

    #[test]
    fn dot_then_arc_rank_3() {
        let r = rep(3, "d2 A");
        assert_eq!(kinds(&r), "NBZ");
        assert_eq!(r.generator_image(1).to_string(), "(N:0, B:p^1q^0, Z:1)");
        assert_eq!(r.generator_image(2).to_string(), "(N:1, B:p^0q^0, Z:0)");
        assert_eq!(r.generator_image(3).to_string(), "(N:0, B:p^0q^1, Z:0)");
    }

    #[test]
    fn single_arc_rank_3() {
        let r = rep(3, "a2");
        assert_eq!(kinds(&r), "BZN");
        assert_eq!(r.generator_image(1).to_string(), "(B:p^1q^0, Z:1, N:0)");
        assert_eq!(r.generator_image(2).to_string(), "(B:p^0q^1, Z:0, N:0)");
        assert_eq!(r.generator_image(3).to_string(), "(B:p^0q^1, Z:0, N:1)");
        assert_eq!(r.schema()[2].origin, Origin::Unused { generator: 3 });
    }

    #[test]
    fn word_images() {
        let r = rep(3, "d2 A");
        assert_eq!(r.image(&w(3, "3 2 1")).unwrap().to_string(), "(N:1, B:p^0q^0, Z:1)");
        assert_eq!(r.image(&w(3, "1 2 3")).unwrap().to_string(), "(N:1, B:p^1q^1, Z:1)");
        assert!(r.image(&Word::empty(3)).unwrap().is_identity());
        assert!(matches!(r.image(&w(4, "1")), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn not_a_leaf() {
        let d = Diagram::parse_id(4, "a3").unwrap();
        assert!(matches!(build_representation(&d), Err(Error::NotALeaf(_))));
    }

    #[test]
    fn embedding_examples() {
        assert!(eq_via_embedding(3, &w(3, "3 2 1"), &w(3, "2 3 1")).unwrap());
        assert!(!eq_via_embedding(3, &w(3, "1 2"), &w(3, "2 1")).unwrap());
        let x = w(4, "4 1 3 3 2");
        assert!(eq_via_embedding(4, &x, &x).unwrap());
        let a2 = rep(3, "a2");
        assert_ne!(a2.image(&w(3, "1 2")).unwrap(), a2.image(&w(3, "2 1")).unwrap());
    }

    #[test]
    fn arc_elements() {
        let r = rep(3, "a2");
        assert_eq!(r.arc_element_image(0).unwrap().to_string(), "(B:p^0q^0, Z:1, N:0)");
        let r = rep(3, "d2 A");
        assert_eq!(r.arc_element_image(1).unwrap().to_string(), "(N:0, B:p^0q^0, Z:1)");
        assert_eq!(r.arc_element_image(0), Err(Error::NotAnArcStep(0)));
        assert_eq!(r.arc_element_image(5), Err(Error::NotAnArcStep(5)));
    }

    #[test]
    fn every_leaf_respects_relations() {
        for n in 3..=7 {
            for r in Embedding::new(n).unwrap().representations() {
                assert!(r.respects_relations(), "{}", r.leaf());
                let (c, d) = r.counts();
                assert_eq!(c + 2 * d, n);
                assert_eq!(r.leaf().schema_counts(), (c, d));
            }
        }
    }

    #[test]
    fn witness_examples() {
        let a2 = rep(3, "a2");
        let a3 = rep(3, "a3");
        let (x, y) = incomparability_witness(&a2, &a3, 4).unwrap().expect("witness");
        assert_eq!(x.len(), y.len());
        assert_eq!(a2.image(&x).unwrap(), a2.image(&y).unwrap());
        assert_ne!(a3.image(&x).unwrap(), a3.image(&y).unwrap());
        assert!(matches!(incomparability_witness(&a2, &a2, 4), Err(Error::SameLeaf(_))));
    }

    #[test]
    fn swapping_can_break_relations() {
        let r = rep(3, "a3");
        assert!(!r.with_swapped_generator(1).respects_relations());
    }

    #[test]
    fn json_export() {
        let j = rep(3, "a2").to_json();
        assert_eq!(j["leaf"], "a2");
        assert_eq!(j["schema"][0]["kind"], "B");
        assert_eq!(j["schema"][2]["origin"], "unused a3");
        assert_eq!(j["images"]["1"], json!([{"p": 1, "q": 0}, 1, 0]));
    }
}
