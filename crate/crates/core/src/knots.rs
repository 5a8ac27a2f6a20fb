//! Knot group presentations with distinguished peripheral words.
//!
//! Braid words and PD codes are turned into Wirtinger-style presentations
//! (one relator per crossing, one dropped) whose generators are all
//! conjugate meridians; torus knots get their two-generator presentation in
//! closed form. Every presentation carries a meridian and a Seifert-framed
//! longitude, so boundary holonomy angles can be read off downstream.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::su2::Su2;

/// A word in the generators: positive letters are generators (1-based),
/// negative letters their inverses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Word {
    pub letters: Vec<i32>,
}

impl Word {
    pub fn new(letters: Vec<i32>) -> Word {
        Word { letters }
    }

    pub fn empty() -> Word {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn generator(i: usize) -> Word {
        Word {
            letters: vec![i as i32 + 1],
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        let mut letters = Vec::with_capacity(self.letters.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn freely_reduced(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Signed letter count.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Image in ℤ under the abelianization sending generator i to weights[i].
    pub fn abelianized(&self, weights: &[i64]) -> i64 {
        self.letters
            .iter()
            .map(|&l| weights[l.unsigned_abs() as usize - 1] * l.signum() as i64)
            .sum()
    }
}

/// Evaluates a word at an assignment of SU(2) elements to the generators.
pub fn evaluate_word(word: &Word, assignment: &[Su2]) -> Result<Su2> {
    let mut acc = Su2::IDENTITY;
    for &l in &word.letters {
        let idx = l.unsigned_abs() as usize;
        if idx == 0 || idx > assignment.len() {
            return Err(Error::IndexOutOfRange {
                letter: l,
                generators: assignment.len(),
            });
        }
        let g = &assignment[idx - 1];
        acc = if l > 0 {
            acc.mul(g)
        } else {
            acc.mul(&g.inverse())
        };
    }
    Ok(acc)
}

/// A finite presentation of a knot group with peripheral data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnotPresentation {
    pub name: String,
    pub n_generators: usize,
    pub relators: Vec<Word>,
    pub meridian: Word,
    /// Seifert-framed (null-homologous) longitude; commutes with the
    /// meridian in the group.
    pub longitude: Word,
    pub writhe: i64,
    /// Abelianization weights: generator i maps to weights[i] in H₁ ≅ ℤ.
    /// All ones for Wirtinger presentations.
    pub abelian_weights: Vec<i64>,
    /// True when every generator is a conjugate of the meridian, so a
    /// representation pins all generator angles to the meridian angle.
    pub wirtinger: bool,
}

impl KnotPresentation {
    /// Structural checks: relator count, abelianization of relators,
    /// meridian ↦ 1 and longitude ↦ 0 in homology.
    pub fn validate(&self) -> Result<()> {
        for r in &self.relators {
            if self.word_in_range(r).is_err() {
                return self.word_in_range(r);
            }
            if r.abelianized(&self.abelian_weights) != 0 {
                return Err(Error::Parse(format!(
                    "relator {:?} does not abelianize to zero",
                    r.letters
                )));
            }
        }
        self.word_in_range(&self.meridian)?;
        self.word_in_range(&self.longitude)?;
        if self.meridian.abelianized(&self.abelian_weights) != 1 {
            return Err(Error::Parse("meridian is not a homology generator".into()));
        }
        if self.longitude.abelianized(&self.abelian_weights) != 0 {
            return Err(Error::Parse("longitude is not null-homologous".into()));
        }
        Ok(())
    }

    fn word_in_range(&self, w: &Word) -> Result<()> {
        for &l in &w.letters {
            let idx = l.unsigned_abs() as usize;
            if idx == 0 || idx > self.n_generators {
                return Err(Error::IndexOutOfRange {
                    letter: l,
                    generators: self.n_generators,
                });
            }
        }
        Ok(())
    }

    /// Mirror image: same group, inverted longitude, negated writhe. The
    /// peripheral pair (μ, λ) of the mirror is (μ⁻¹, λ), which equals
    /// (μ, λ⁻¹) after re-orienting the knot; the pillowcase image picks up
    /// β ↦ −β.
    pub fn mirror(&self) -> KnotPresentation {
        let name = if let Some(base) = self.name.strip_suffix("!") {
            base.to_string()
        } else {
            format!("{}!", self.name)
        };
        KnotPresentation {
            name,
            n_generators: self.n_generators,
            relators: self.relators.clone(),
            meridian: self.meridian.clone(),
            longitude: self.longitude.inverse(),
            writhe: -self.writhe,
            abelian_weights: self.abelian_weights.clone(),
            wirtinger: self.wirtinger,
        }
    }

    /// SHA-256 over the structural content (name excluded), hex-encoded.
    pub fn hash(&self) -> String {
        fn feed(hasher: &mut Sha256, w: &Word) {
            for &l in &w.letters {
                hasher.update(l.to_le_bytes());
            }
            hasher.update([0xff]);
        }
        let mut hasher = Sha256::new();
        for r in &self.relators {
            feed(&mut hasher, r);
        }
        feed(&mut hasher, &self.meridian);
        feed(&mut hasher, &self.longitude);
        hasher.update((self.n_generators as u64).to_le_bytes());
        hasher.update(self.writhe.to_le_bytes());
        for &w in &self.abelian_weights {
            hasher.update(w.to_le_bytes());
        }
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Built-in names accepted by the parsers and the CLI.
pub fn named_knot(name: &str) -> Result<KnotPresentation> {
    match name.to_ascii_lowercase().as_str() {
        "unknot" => parse_braid("1"),
        "trefoil" | "3_1" => torus_knot(2, 3),
        "figure-eight" | "figure8" | "4_1" => {
            let mut k = parse_braid("1 -2 1 -2")?;
            k.name = "figure-eight".into();
            Ok(k)
        }
        "cinquefoil" | "5_1" => torus_knot(2, 5),
        other => Err(Error::Parse(format!("unknown knot name '{other}'"))),
    }
}

// ---------------------------------------------------------------------------
// Braid words
// ---------------------------------------------------------------------------

/// Parses a braid word such as "1 1 1", "s1 -s2", or "1 -2 1 -2" and returns
/// the Wirtinger presentation of its closure.
///
/// Letter k > 0 is the Artin generator σ_k (strand k crosses over strand
/// k+1); negative letters are inverses. The closure must be a knot. The
/// diagram is converted to a PD code with edges numbered along the knot
/// starting at the top of strand 1, so braids and PD codes share one
/// Wirtinger and longitude construction.
pub fn parse_braid(text: &str) -> Result<KnotPresentation> {
    let letters = parse_braid_letters(text)?;
    if letters.is_empty() {
        return Err(Error::Parse("empty braid word".into()));
    }
    let strands = letters
        .iter()
        .map(|l| l.unsigned_abs() as usize + 1)
        .max()
        .unwrap();

    // Closure components = cycles of the braid permutation.
    let mut perm: Vec<usize> = (0..strands).collect();
    for &l in &letters {
        let i = l.unsigned_abs() as usize - 1;
        perm.swap(i, i + 1);
    }
    let components = permutation_cycles(&perm);
    if components != 1 {
        return Err(Error::MultiComponentLink { components });
    }

    // Walk the closure, numbering edges 1..2c in knot order and recording
    // which crossing port each edge meets. Ports per crossing: strands flow
    // downward; entries are NW/NE, exits SW/SE.
    let n_cross = letters.len();
    #[derive(Default, Clone, Copy)]
    struct Ports {
        nw: usize,
        ne: usize,
        sw: usize,
        se: usize,
    }
    let mut ports = vec![Ports::default(); n_cross];
    let mut pos = 0usize;
    let mut edge = 1usize;
    let n_edges = 2 * n_cross;
    loop {
        for (t, &l) in letters.iter().enumerate() {
            let i = l.unsigned_abs() as usize - 1;
            if pos == i {
                ports[t].nw = edge;
                edge = edge % n_edges + 1;
                ports[t].se = edge;
                pos = i + 1;
            } else if pos == i + 1 {
                ports[t].ne = edge;
                edge = edge % n_edges + 1;
                ports[t].sw = edge;
                pos = i;
            }
        }
        if pos == 0 {
            break;
        }
    }

    // Tuples counterclockwise from the incoming under-edge. σ_i positive:
    // the strand from position i passes over (NW→SE), the under-strand runs
    // NE→SW; counterclockwise from NE reads (NE, NW, SW, SE).
    let tuples: Vec<[usize; 4]> = letters
        .iter()
        .enumerate()
        .map(|(t, &l)| {
            let p = ports[t];
            if l > 0 {
                [p.ne, p.nw, p.sw, p.se]
            } else {
                [p.nw, p.sw, p.se, p.ne]
            }
        })
        .collect();

    let mut pres = presentation_from_crossings(&tuples)?;
    pres.name = format!("braid[{}]", text.trim());
    let braid_writhe: i64 = letters.iter().map(|l| l.signum() as i64).sum();
    debug_assert_eq!(pres.writhe, braid_writhe);
    pres.validate()?;
    Ok(pres)
}

fn parse_braid_letters(text: &str) -> Result<Vec<i32>> {
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        let mut s = tok;
        let mut sign = 1i32;
        if let Some(rest) = s.strip_prefix('-') {
            sign = -1;
            s = rest;
        } else if let Some(rest) = s.strip_prefix('+') {
            s = rest;
        }
        if let Some(rest) = s.strip_prefix(['s', 'S']) {
            s = rest;
        }
        if let Some(rest) = s.strip_prefix('-') {
            sign = -sign;
            s = rest;
        }
        let k: i32 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad braid letter '{tok}'")))?;
        if k == 0 {
            return Err(Error::Parse("braid letter 0 is not allowed".into()));
        }
        letters.push(sign * k);
    }
    Ok(letters)
}

fn permutation_cycles(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
        }
    }
    cycles
}

// ---------------------------------------------------------------------------
// PD codes
// ---------------------------------------------------------------------------

/// Parses a planar-diagram code "PD[(a,b,c,d),...]" for a knot. Each tuple
/// lists the four edges around a crossing counterclockwise starting from the
/// incoming under-edge; edges are numbered 1..2n along the knot.
pub fn parse_pd(text: &str) -> Result<KnotPresentation> {
    let tuples = parse_pd_tuples(text)?;
    let mut pres = presentation_from_crossings(&tuples)?;
    pres.name = format!("PD[{} crossings]", tuples.len());
    pres.validate()?;
    Ok(pres)
}

/// Shared Wirtinger construction from a list of counterclockwise crossing
/// tuples with knot-ordered edge labels.
fn presentation_from_crossings(tuples: &[[usize; 4]]) -> Result<KnotPresentation> {
    if tuples.is_empty() {
        // The zero-crossing unknot.
        let pres = KnotPresentation {
            name: "PD[]".into(),
            n_generators: 1,
            relators: Vec::new(),
            meridian: Word::generator(0),
            longitude: Word::empty(),
            writhe: 0,
            abelian_weights: vec![1],
            wirtinger: true,
        };
        return Ok(pres);
    }

    let n = tuples.len();
    let n_edges = 2 * n;
    let succ = |e: usize| -> usize { e % n_edges + 1 };

    // Every edge label 1..2n appears exactly twice.
    let mut count = vec![0usize; n_edges + 1];
    for t in tuples {
        for &e in t {
            if e < 1 || e > n_edges {
                return Err(Error::InconsistentPd(format!(
                    "edge label {e} outside 1..{n_edges}"
                )));
            }
            count[e] += 1;
        }
    }
    if let Some(e) = (1..=n_edges).find(|&e| count[e] != 2) {
        return Err(Error::InconsistentPd(format!(
            "edge {e} appears {} times, expected 2",
            count[e]
        )));
    }

    // Under-strand numbering: the out-edge follows the in-edge.
    for t in tuples {
        if t[2] != succ(t[0]) {
            return Err(Error::InconsistentPd(format!(
                "under-strand at crossing {t:?} does not advance the edge numbering"
            )));
        }
    }

    // Over-strand direction and crossing sign. With (i,j,k,l) listed
    // counterclockwise from the incoming under-edge, the over-strand runs
    // j -> l at a positive crossing and l -> j at a negative one.
    #[derive(Clone, Copy)]
    struct Crossing {
        under_in: usize,
        under_out: usize,
        over_in: usize,
        over_out: usize,
        sign: i64,
    }
    let mut crossings = Vec::with_capacity(n);
    for t in tuples {
        let (i, j, k, l) = (t[0], t[1], t[2], t[3]);
        let (over_in, over_out, sign) = if l == succ(j) {
            (j, l, 1)
        } else if j == succ(l) {
            (l, j, -1)
        } else {
            return Err(Error::InconsistentPd(format!(
                "over-strand at crossing {t:?} does not advance the edge numbering"
            )));
        };
        crossings.push(Crossing {
            under_in: i,
            under_out: k,
            over_in,
            over_out,
            sign,
        });
    }

    // Component count: traverse the edge-successor map defined by the
    // crossings themselves (head of each edge is where it is consumed).
    {
        let mut next = vec![0usize; n_edges + 1];
        let mut head_count = vec![0usize; n_edges + 1];
        for c in &crossings {
            next[c.under_in] = c.under_out;
            next[c.over_in] = c.over_out;
            head_count[c.under_in] += 1;
            head_count[c.over_in] += 1;
        }
        if (1..=n_edges).any(|e| head_count[e] != 1) {
            return Err(Error::InconsistentPd(
                "some edge is consumed twice or never; not a single oriented knot".into(),
            ));
        }
        let mut seen = vec![false; n_edges + 1];
        let mut components = 0;
        for start in 1..=n_edges {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                e = next[e];
            }
        }
        if components != 1 {
            return Err(Error::MultiComponentLink { components });
        }
    }

    // Arcs: edges glued across over-strands. One arc per crossing.
    let mut arc_of = {
        let mut parent: Vec<usize> = (0..=n_edges).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for c in &crossings {
            let a = find(&mut parent, c.over_in);
            let b = find(&mut parent, c.over_out);
            parent[a] = b;
        }
        let mut label = vec![usize::MAX; n_edges + 1];
        let mut n_arcs = 0;
        let mut arc_of = vec![0usize; n_edges + 1];
        for e in 1..=n_edges {
            let root = find(&mut parent, e);
            if label[root] == usize::MAX {
                label[root] = n_arcs;
                n_arcs += 1;
            }
            arc_of[e] = label[root];
        }
        if n_arcs != n {
            return Err(Error::InconsistentPd(format!(
                "{n_arcs} arcs for {n} crossings"
            )));
        }
        arc_of
    };
    // Re-label arcs so the arc containing edge 1 is generator 1 and labels
    // increase along the knot; keeps presentations stable across inputs.
    {
        let mut order = vec![usize::MAX; n];
        let mut seen = 0usize;
        for e in 1..=n_edges {
            let a = arc_of[e];
            if order[a] == usize::MAX {
                order[a] = seen;
                seen += 1;
            }
        }
        for e in 1..=n_edges {
            arc_of[e] = order[arc_of[e]];
        }
    }

    // Wirtinger relators: positive crossing x_out = o x_in o⁻¹,
    // negative x_out = o⁻¹ x_in o. One dropped.
    let mut relators = Vec::with_capacity(n - 1);
    for c in crossings.iter().take(n - 1) {
        let a = arc_of[c.under_in] as i32 + 1;
        let b = arc_of[c.under_out] as i32 + 1;
        let o = arc_of[c.over_in] as i32 + 1;
        let letters = if c.sign > 0 {
            vec![o, a, -o, -b]
        } else {
            vec![-o, a, o, -b]
        };
        relators.push(Word::new(letters).freely_reduced());
    }

    let writhe: i64 = crossings.iter().map(|c| c.sign).sum();

    // Longitude: walk the edges in order, recording the over-arc generator
    // with the crossing sign at each underpass. The based word composes the
    // overpasses in the reverse of traversal order; the meridian correction
    // makes it null-homologous.
    let mut under_at = vec![None; n_edges + 1];
    for (ci, c) in crossings.iter().enumerate() {
        under_at[c.under_in] = Some(ci);
    }
    let mut collected = Vec::new();
    for e in 1..=n_edges {
        if let Some(ci) = under_at[e] {
            let c = &crossings[ci];
            let o = arc_of[c.over_in] as i32 + 1;
            collected.push(if c.sign > 0 { o } else { -o });
        }
    }
    collected.reverse();
    let meridian = Word::new(vec![arc_of[1] as i32 + 1]);
    let longitude = Word::new(collected)
        .concat(&meridian.pow(-writhe))
        .freely_reduced();

    Ok(KnotPresentation {
        name: format!("PD[{n} crossings]"),
        n_generators: n,
        relators,
        meridian,
        longitude,
        writhe,
        abelian_weights: vec![1; n],
        wirtinger: true,
    })
}

fn parse_pd_tuples(text: &str) -> Result<Vec<[usize; 4]>> {
    let s = text.trim();
    let s = s
        .strip_prefix("PD")
        .or_else(|| s.strip_prefix("pd"))
        .unwrap_or(s)
        .trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse("PD code must be bracketed: PD[(a,b,c,d),...]".into()))?
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    let mut tuples = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        rest = rest.trim_start_matches([',', ' ', '\t', '\n']);
        if rest.is_empty() {
            break;
        }
        // Accept both (a,b,c,d) and X[a,b,c,d] tuple spellings.
        let (open, close) = if rest.starts_with('(') {
            ('(', ')')
        } else if rest.starts_with('X') || rest.starts_with('x') {
            rest = rest[1..].trim_start();
            ('[', ']')
        } else {
            return Err(Error::Parse(format!("unexpected PD syntax near '{rest}'")));
        };
        let body_start = rest
            .find(open)
            .ok_or_else(|| Error::Parse("malformed PD tuple".into()))?;
        let body_end = rest
            .find(close)
            .ok_or_else(|| Error::Parse("unclosed PD tuple".into()))?;
        let body = &rest[body_start + 1..body_end];
        let nums: Vec<usize> = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad edge label '{}'", t.trim())))
            })
            .collect::<Result<_>>()?;
        if nums.len() != 4 {
            return Err(Error::Parse(format!(
                "PD tuple has {} entries, expected 4",
                nums.len()
            )));
        }
        tuples.push([nums[0], nums[1], nums[2], nums[3]]);
        rest = &rest[body_end + 1..];
    }
    Ok(tuples)
}

// ---------------------------------------------------------------------------
// Torus knots
// ---------------------------------------------------------------------------

/// The closed-form presentation ⟨x, y | x^p = y^q⟩ of the (p, q) torus knot,
/// with meridian x^{-s} y^{r} for pr − qs = 1 and Seifert longitude
/// x^p · meridian^{-pq}.
pub fn torus_knot(p: i64, q: i64) -> Result<KnotPresentation> {
    if p.abs() < 2 || q.abs() < 2 {
        return Err(Error::Parse(format!(
            "torus knot parameters must have |p|,|q| >= 2, got ({p},{q})"
        )));
    }
    if gcd(p, q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    if p < 0 || q < 0 {
        // T(-p,q) is the mirror of T(p,q).
        return Ok(torus_knot(p.abs(), q.abs())?.mirror());
    }
    // pr ≡ 1 (mod q), r chosen with minimal magnitude.
    let mut r = 0i64;
    for cand in 0..q {
        if (p * cand).rem_euclid(q) == 1 {
            r = if cand > q / 2 { cand - q } else { cand };
            break;
        }
    }
    let s = (p * r - 1) / q;
    debug_assert_eq!(p * r - q * s, 1);

    let x = Word::generator(0);
    let y = Word::generator(1);
    let relator = x.pow(p).concat(&y.pow(-q)).freely_reduced();
    let meridian = x.pow(-s).concat(&y.pow(r)).freely_reduced();
    let longitude = x.pow(p).concat(&meridian.pow(-p * q)).freely_reduced();

    let pres = KnotPresentation {
        name: format!("T({p},{q})"),
        n_generators: 2,
        relators: vec![relator],
        meridian,
        longitude,
        writhe: p * q - p - q + 1, // writhe of the standard positive braid diagram
        abelian_weights: vec![q, p],
        wirtinger: false,
    };
    pres.validate()?;
    Ok(pres)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn random_su2(rng: &mut impl Rng) -> Su2 {
        Su2::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        )
    }

    #[test]
    fn word_basics() {
        let w = Word::new(vec![1, 2, -2, -1, 3]);
        assert_eq!(w.freely_reduced().letters, vec![3]);
        assert_eq!(w.exponent_sum(), 1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let assign: Vec<Su2> = (0..3).map(|_| random_su2(&mut rng)).collect();
        let full = evaluate_word(&w, &assign).unwrap();
        let reduced = evaluate_word(&w.freely_reduced(), &assign).unwrap();
        assert!(full.dist(&reduced) < 1e-12);
        assert!(
            evaluate_word(&Word::empty(), &assign)
                .unwrap()
                .dist(&Su2::IDENTITY)
                < 1e-15
        );
        assert!(evaluate_word(&Word::new(vec![4]), &assign).is_err());
    }

    #[test]
    fn evaluate_is_homomorphism() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let assign: Vec<Su2> = (0..4).map(|_| random_su2(&mut rng)).collect();
        let w1 = Word::new(vec![1, -3, 2]);
        let w2 = Word::new(vec![4, 4, -1]);
        let lhs = evaluate_word(&w1.concat(&w2), &assign).unwrap();
        let rhs = evaluate_word(&w1, &assign)
            .unwrap()
            .mul(&evaluate_word(&w2, &assign).unwrap());
        assert!(lhs.dist(&rhs) < 1e-12);
    }

    #[test]
    fn braid_trefoil_shape() {
        let k = parse_braid("1 1 1").unwrap();
        assert_eq!(k.n_generators, 3);
        assert_eq!(k.relators.len(), 2);
        assert_eq!(k.writhe, 3);
        assert_eq!(k.longitude.abelianized(&k.abelian_weights), 0);
        assert_eq!(alexander_determinant(&k), 3);
    }

    #[test]
    fn braid_unknot() {
        let k = parse_braid("1").unwrap();
        assert_eq!(k.writhe, 1);
        // Longitude is trivial after the writhe correction: its free
        // reduction against the single relator x1 = x2 kills everything.
        // Here we only require null-homology plus word validity.
        assert_eq!(k.longitude.abelianized(&k.abelian_weights), 0);
    }

    #[test]
    fn braid_two_component_rejected() {
        match parse_braid("1 -1") {
            Err(Error::MultiComponentLink { components }) => assert_eq!(components, 2),
            other => panic!("expected MultiComponentLink, got {other:?}"),
        }
    }

    #[test]
    fn braid_letter_forms() {
        let a = parse_braid("1 -2 1 -2").unwrap();
        let b = parse_braid("s1 -s2 S1 s-2").unwrap();
        assert_eq!(a.relators, b.relators);
        assert!(parse_braid("x3").is_err());
        assert!(parse_braid("0").is_err());
    }

    #[test]
    fn pd_trefoil_shape() {
        let k = parse_pd("PD[(1,4,2,5),(3,6,4,1),(5,2,6,3)]").unwrap();
        assert_eq!(k.n_generators, 3);
        assert_eq!(k.relators.len(), 2);
        assert_eq!(k.writhe, 3);
        assert_eq!(k.longitude.abelianized(&k.abelian_weights), 0);
        // Alexander determinant |Δ(−1)| = 3 distinguishes the trefoil.
        assert_eq!(alexander_determinant(&k), 3);
    }

    #[test]
    fn pd_empty_is_unknot() {
        let k = parse_pd("PD[]").unwrap();
        assert_eq!(k.n_generators, 1);
        assert!(k.relators.is_empty());
    }

    #[test]
    fn pd_one_crossing_unknot() {
        let k = parse_pd("PD[(1,2,2,1)]").unwrap();
        assert_eq!(k.n_generators, 1);
        assert_eq!(alexander_determinant(&k), 1);
    }

    #[test]
    fn pd_figure_eight() {
        // Standard 4_1 code.
        let k = parse_pd("PD[(4,2,5,1),(8,6,1,5),(6,3,7,4),(2,7,3,8)]").unwrap();
        assert_eq!(k.n_generators, 4);
        assert_eq!(alexander_determinant(&k), 5);
        assert_eq!(k.writhe, 0);
    }

    #[test]
    fn pd_malformed_rejected() {
        assert!(matches!(
            parse_pd("PD[(1,4,2,5),(3,6,4,1),(5,2,6,4)]"),
            Err(Error::InconsistentPd(_))
        ));
        assert!(matches!(parse_pd("PD[(1,2,3)]"), Err(Error::Parse(_))));
        // A two-component link with consistent labels is still rejected.
        assert!(parse_pd("PD[(1,3,2,4),(3,1,4,2)]").is_err());
    }

    #[test]
    fn torus_knot_presentations() {
        let k = torus_knot(2, 3).unwrap();
        assert_eq!(k.n_generators, 2);
        assert_eq!(k.relators.len(), 1);
        // x^2 y^{-3}
        assert_eq!(k.relators[0].letters, vec![1, 1, -2, -2, -2]);
        assert_eq!(k.meridian.abelianized(&k.abelian_weights), 1);
        assert_eq!(k.longitude.abelianized(&k.abelian_weights), 0);
        assert!(matches!(torus_knot(4, 6), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn mirror_is_involution() {
        let k = parse_braid("1 1 1").unwrap();
        let m = k.mirror();
        assert_eq!(m.writhe, -3);
        let mm = m.mirror();
        assert_eq!(mm.relators, k.relators);
        assert_eq!(mm.longitude, k.longitude);
        assert_eq!(mm.writhe, k.writhe);
        assert_eq!(mm.hash(), k.hash());
    }

    #[test]
    fn hash_is_structural() {
        let a = parse_braid("1 1 1").unwrap();
        let mut b = parse_braid("1 1 1").unwrap();
        b.name = "renamed".into();
        assert_eq!(a.hash(), b.hash());
        let c = parse_braid("1 -2 1 -2").unwrap();
        assert_ne!(a.hash(), c.hash());
    }

    /// |Δ(−1)|: Fox calculus on the Wirtinger presentation, one generator
    /// column deleted, integer determinant by fraction-free elimination.
    fn alexander_determinant(k: &KnotPresentation) -> i64 {
        let n = k.n_generators;
        if k.relators.is_empty() {
            return 1;
        }
        let mut m = vec![vec![0i64; n - 1]; k.relators.len()];
        for (ri, r) in k.relators.iter().enumerate() {
            for col in 0..n - 1 {
                m[ri][col] = fox_derivative_at_minus_one(r, col as i32 + 1);
            }
        }
        integer_determinant(&mut m).abs()
    }

    fn fox_derivative_at_minus_one(w: &Word, gen: i32) -> i64 {
        // t^s evaluated at t = −1 with s the abelianized prefix exponent.
        let mut s: i64 = 0;
        let mut acc: i64 = 0;
        let sign_pow = |e: i64| if e.rem_euclid(2) == 0 { 1 } else { -1 };
        for &l in &w.letters {
            if l == gen {
                acc += sign_pow(s);
                s += 1;
            } else if l == -gen {
                acc -= sign_pow(s - 1);
                s -= 1;
            } else {
                s += l.signum() as i64;
            }
        }
        acc
    }

    fn integer_determinant(m: &mut [Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 || m[0].len() != n {
            return 1;
        }
        // Bareiss fraction-free elimination.
        let mut sign = 1i64;
        let mut prev = 1i64;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                let swap = (k + 1..n).find(|&i| m[i][k] != 0);
                match swap {
                    Some(i) => {
                        m.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
                m[i][k] = 0;
            }
            prev = m[k][k];
        }
        sign * m[n - 1][n - 1]
    }
}
