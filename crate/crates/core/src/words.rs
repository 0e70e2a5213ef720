//! Free-product word algebra for the fundamental groups of the punctured
//! modular orbifolds: normal forms in Z * Z/p and Z/2 * Z/p, abelianization,
//! the squared-twist projection, the Dehn-twist generation and cube-root
//! obstructions, and the stacky fundamental-group composition law.

use crate::error::{Error, Result};
use crate::fricke::FrickeElement;
use std::fmt;

/// Order of the left free factor: Z for the full fundamental group,
/// Z/2 after projecting out squared loops around the nodal point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TFactor {
    Infinite,
    Two,
}

/// A letter in normal form: a nonzero power of the nodal-loop generator t,
/// or a power 1..p-1 of the orbifold-loop generator s.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    T(i64),
    S(u32),
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::T(k) => write!(f, "t^{k}"),
            Letter::S(e) => write!(f, "s^{e}"),
        }
    }
}

/// An element of Z * Z/p (or Z/2 * Z/p) in alternating normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeProductWord {
    p: u32,
    t_order: TFactor,
    letters: Vec<Letter>,
}

impl fmt::Debug for FreeProductWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| format!("{l:?}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FreeProductWord {
    pub fn identity(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidParameter("torsion order must be >= 2".into()));
        }
        Ok(FreeProductWord { p, t_order: TFactor::Infinite, letters: vec![] })
    }

    /// t^k.
    pub fn t_power(p: u32, k: i64) -> Result<Self> {
        let mut w = Self::identity(p)?;
        w.push_t(k);
        Ok(w)
    }

    /// s^e.
    pub fn s_power(p: u32, e: i64) -> Result<Self> {
        let mut w = Self::identity(p)?;
        w.push_s(e);
        Ok(w)
    }

    /// Build from a letter sequence, reducing to normal form.
    pub fn from_letters(p: u32, letters: &[Letter]) -> Result<Self> {
        let mut w = Self::identity(p)?;
        for l in letters {
            match l {
                Letter::T(k) => w.push_t(*k),
                Letter::S(e) => w.push_s(*e as i64),
            }
        }
        Ok(w)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn t_order(&self) -> TFactor {
        self.t_order
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn reduce_t(&self, k: i64) -> i64 {
        match self.t_order {
            TFactor::Infinite => k,
            TFactor::Two => k.rem_euclid(2),
        }
    }

    /// Append t^k, merging with a trailing t-letter.
    fn push_t(&mut self, k: i64) {
        let k = self.reduce_t(k);
        if k == 0 {
            return;
        }
        if let Some(&Letter::T(e)) = self.letters.last() {
            let merged = self.reduce_t(e + k);
            if merged == 0 {
                self.letters.pop();
                self.renormalize_tail();
            } else if let Some(Letter::T(slot)) = self.letters.last_mut() {
                *slot = merged;
            }
        } else {
            self.letters.push(Letter::T(k));
        }
    }

    /// Append s^e, merging with a trailing s-letter.
    fn push_s(&mut self, e: i64) {
        let e = e.rem_euclid(self.p as i64) as u32;
        if e == 0 {
            return;
        }
        if let Some(&Letter::S(f)) = self.letters.last() {
            let merged = (f + e) % self.p;
            if merged == 0 {
                self.letters.pop();
                self.renormalize_tail();
            } else if let Some(Letter::S(slot)) = self.letters.last_mut() {
                *slot = merged;
            }
        } else {
            self.letters.push(Letter::S(e));
        }
    }

    /// After a cancellation the two neighbours of the removed letter carry the
    /// same tag; merge them (cascading).
    fn renormalize_tail(&mut self) {
        loop {
            let len = self.letters.len();
            if len < 2 {
                return;
            }
            let merged = match (self.letters[len - 2], self.letters[len - 1]) {
                (Letter::T(a), Letter::T(b)) => {
                    let m = self.reduce_t(a + b);
                    Some(if m == 0 { None } else { Some(Letter::T(m)) })
                }
                (Letter::S(a), Letter::S(b)) => {
                    let m = (a + b) % self.p;
                    Some(if m == 0 { None } else { Some(Letter::S(m)) })
                }
                _ => None,
            };
            match merged {
                None => return,
                Some(repl) => {
                    self.letters.pop();
                    self.letters.pop();
                    if let Some(l) = repl {
                        self.letters.push(l);
                    }
                }
            }
        }
    }

    pub fn inverse(&self) -> FreeProductWord {
        let mut out = FreeProductWord { p: self.p, t_order: self.t_order, letters: vec![] };
        for l in self.letters.iter().rev() {
            match l {
                Letter::T(k) => out.push_t(-k),
                Letter::S(e) => out.push_s(-(*e as i64)),
            }
        }
        out
    }

    /// The factor-wise inversion automorphism t -> t^-1, s -> s^-1.
    pub fn invert_generators(&self) -> FreeProductWord {
        let mut out = FreeProductWord { p: self.p, t_order: self.t_order, letters: vec![] };
        for l in &self.letters {
            match l {
                Letter::T(k) => out.push_t(-k),
                Letter::S(e) => out.push_s(-(*e as i64)),
            }
        }
        out
    }
}

/// Concatenate and reduce. Associative with the empty word as identity.
pub fn word_multiply(u: &FreeProductWord, v: &FreeProductWord) -> Result<FreeProductWord> {
    if u.p != v.p || u.t_order != v.t_order {
        return Err(Error::GroupContextMismatch(format!(
            "words live in different free products (p {} vs {})",
            u.p, v.p
        )));
    }
    let mut out = u.clone();
    for l in &v.letters {
        match l {
            Letter::T(k) => out.push_t(*k),
            Letter::S(e) => out.push_s(*e as i64),
        }
    }
    Ok(out)
}

pub fn word_conjugate(w: &FreeProductWord, by: &FreeProductWord) -> Result<FreeProductWord> {
    word_multiply(&word_multiply(by, w)?, &by.inverse())
}

/// Exponent sums per generator: (t-sum in Z, s-sum in Z/p).
pub fn abelianize(u: &FreeProductWord) -> (i64, u32) {
    let mut t = 0i64;
    let mut s = 0u32;
    for l in &u.letters {
        match l {
            Letter::T(k) => t += k,
            Letter::S(e) => s = (s + e) % u.p,
        }
    }
    (t, s)
}

/// Reduce each t-exponent mod 2 and renormalize: the projection
/// Z * Z/p ->> Z/2 * Z/p whose kernel contains every conjugate of t^2.
pub fn project_to_z2_free_product(u: &FreeProductWord) -> FreeProductWord {
    let mut out = FreeProductWord { p: u.p, t_order: TFactor::Two, letters: vec![] };
    for l in &u.letters {
        match l {
            Letter::T(k) => out.push_t(*k),
            Letter::S(e) => out.push_s(*e as i64),
        }
    }
    out
}

/// Verdict of the generation obstruction, with the stuck coordinate when
/// generation fails.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GenerationVerdict {
    pub can_generate: bool,
    /// The torsion order whose coordinate is unreachable from (1, 0).
    pub stuck_torsion_order: Option<u32>,
}

/// Can elements abelianizing to (1, 0) generate Z (+) Z/p? Every candidate
/// must abelianize to exactly (1, 0); the torsion coordinate is then stuck at
/// zero whenever p > 1.
pub fn dehn_twist_generation_obstruction(
    p: u32,
    candidate_images: &[FreeProductWord],
) -> Result<GenerationVerdict> {
    for (i, w) in candidate_images.iter().enumerate() {
        if w.p != p {
            return Err(Error::GroupContextMismatch(format!("candidate {i} has wrong p")));
        }
        let ab = abelianize(w);
        if ab != (1, 0) {
            return Err(Error::Precondition(format!(
                "candidate {i} abelianizes to {ab:?}, expected (1, 0)"
            )));
        }
    }
    if p <= 1 {
        return Ok(GenerationVerdict { can_generate: true, stuck_torsion_order: None });
    }
    Ok(GenerationVerdict { can_generate: false, stuck_torsion_order: Some(p) })
}

/// Does (z, t) have a cube root in Z (+) Z/p? Decided by 3 | z and
/// t lying in 3 * (Z/p).
pub fn cube_root_obstruction(p: u32, target: (i64, i64)) -> bool {
    if p == 0 {
        return false;
    }
    let (z, t) = target;
    if z % 3 != 0 {
        return false;
    }
    let t = t.rem_euclid(p as i64) as u32;
    let g = gcd(3, p);
    t % g == 0
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// ---------------------------------------------------------------------------
// Stacky fundamental group pairs
// ---------------------------------------------------------------------------

/// How the covering group acts on path words: trivially, or through the
/// index-two Fricke-flag character composed with generator inversion.
/// Both are genuine homomorphisms to Aut(Z * Z/p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordAction {
    Trivial,
    InvertOnFricke,
}

impl WordAction {
    pub fn apply(&self, gamma: &FrickeElement, w: &FreeProductWord) -> FreeProductWord {
        match self {
            WordAction::Trivial => w.clone(),
            WordAction::InvertOnFricke => {
                if gamma.has_fricke_flag() {
                    w.invert_generators()
                } else {
                    w.clone()
                }
            }
        }
    }
}

/// A pair (gamma, y): a covering-group element together with a path word.
#[derive(Clone, PartialEq, Eq)]
pub struct StackyElement {
    pub gamma: FrickeElement,
    pub word: FreeProductWord,
}

impl fmt::Debug for StackyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.gamma, self.word)
    }
}

/// The ambient data of a stacky fundamental group: level, torsion order, and
/// the chosen action of the covering group on words.
#[derive(Clone, Copy, Debug)]
pub struct StackyGroup {
    pub n: u32,
    pub p: u32,
    pub action: WordAction,
}

impl StackyGroup {
    pub fn new(n: u32, p: u32, action: WordAction) -> Result<Self> {
        if n < 1 || p < 2 {
            return Err(Error::InvalidParameter("need n >= 1 and p >= 2".into()));
        }
        Ok(StackyGroup { n, p, action })
    }

    pub fn element(&self, gamma: FrickeElement, word: FreeProductWord) -> Result<StackyElement> {
        if gamma.level() != self.n {
            return Err(Error::GroupContextMismatch("gamma level mismatch".into()));
        }
        if word.p() != self.p || word.t_order() != TFactor::Infinite {
            return Err(Error::GroupContextMismatch("word context mismatch".into()));
        }
        Ok(StackyElement { gamma, word })
    }

    pub fn identity(&self) -> StackyElement {
        StackyElement {
            gamma: FrickeElement::identity(self.n),
            word: FreeProductWord::identity(self.p).expect("p >= 2"),
        }
    }

    /// (g1, y1) * (g2, y2) = (g1 g2, (g2 . y1) # y2).
    pub fn compose(&self, a: &StackyElement, b: &StackyElement) -> Result<StackyElement> {
        let gamma = crate::fricke::fricke_compose(&a.gamma, &b.gamma)?;
        let moved = self.action.apply(&b.gamma, &a.word);
        let word = word_multiply(&moved, &b.word)?;
        Ok(StackyElement { gamma, word })
    }

    pub fn inverse(&self, a: &StackyElement) -> StackyElement {
        let gamma_inv = a.gamma.inverse();
        let moved = self.action.apply(&gamma_inv, &a.word);
        StackyElement { gamma: gamma_inv, word: moved.inverse() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: u32, letters: &[Letter]) -> FreeProductWord {
        FreeProductWord::from_letters(p, letters).unwrap()
    }

    #[test]
    fn normal_form_reduction() {
        let p = 3;
        // t * t^-1 = e
        let u = word_multiply(&w(p, &[Letter::T(1)]), &w(p, &[Letter::T(-1)])).unwrap();
        assert!(u.is_identity());
        // s * s^(p-1) = e
        let u = word_multiply(&w(p, &[Letter::S(1)]), &w(p, &[Letter::S(2)])).unwrap();
        assert!(u.is_identity());
        // (t s)(s^2 t) = t^2 for p = 3
        let u = word_multiply(
            &w(p, &[Letter::T(1), Letter::S(1)]),
            &w(p, &[Letter::S(2), Letter::T(1)]),
        )
        .unwrap();
        assert_eq!(u.letters(), &[Letter::T(2)]);
    }

    #[test]
    fn multiplication_is_associative_on_samples() {
        let p = 4;
        let samples = [
            w(p, &[]),
            w(p, &[Letter::T(2)]),
            w(p, &[Letter::S(3)]),
            w(p, &[Letter::T(-1), Letter::S(1), Letter::T(4)]),
            w(p, &[Letter::S(2), Letter::T(1), Letter::S(1)]),
            w(p, &[Letter::T(1), Letter::S(3), Letter::T(-2), Letter::S(2)]),
        ];
        for a in &samples {
            for b in &samples {
                for c in &samples {
                    let ab_c =
                        word_multiply(&word_multiply(a, b).unwrap(), c).unwrap();
                    let a_bc =
                        word_multiply(a, &word_multiply(b, c).unwrap()).unwrap();
                    assert_eq!(ab_c, a_bc);
                }
            }
        }
    }

    #[test]
    fn inverses() {
        let p = 5;
        let words = [
            w(p, &[Letter::T(3), Letter::S(2), Letter::T(-1)]),
            w(p, &[Letter::S(4), Letter::T(7)]),
        ];
        for u in &words {
            assert!(word_multiply(u, &u.inverse()).unwrap().is_identity());
            assert!(word_multiply(&u.inverse(), u).unwrap().is_identity());
        }
    }

    #[test]
    fn abelianization_examples() {
        let p = 4;
        assert_eq!(abelianize(&w(p, &[Letter::T(1)])), (1, 0));
        assert_eq!(abelianize(&w(p, &[Letter::S(1), Letter::T(2), Letter::S(1)])), (2, 2));
        assert_eq!(abelianize(&FreeProductWord::identity(p).unwrap()), (0, 0));
    }

    #[test]
    fn abelianize_is_additive() {
        let p = 6;
        let a = w(p, &[Letter::T(2), Letter::S(5), Letter::T(-3)]);
        let b = w(p, &[Letter::S(4), Letter::T(1), Letter::S(2)]);
        let ab = word_multiply(&a, &b).unwrap();
        let (ta, sa) = abelianize(&a);
        let (tb, sb) = abelianize(&b);
        assert_eq!(abelianize(&ab), (ta + tb, (sa + sb) % p));
    }

    #[test]
    fn z2_projection_kills_squared_twists() {
        let p = 4;
        let t2 = w(p, &[Letter::T(2)]);
        assert!(project_to_z2_free_product(&t2).is_identity());

        // conjugates of t^2 die as well
        let conjugators = [
            w(p, &[Letter::S(1)]),
            w(p, &[Letter::T(1), Letter::S(2)]),
            w(p, &[Letter::S(3), Letter::T(-5), Letter::S(1)]),
        ];
        for g in &conjugators {
            let c = word_conjugate(&t2, g).unwrap();
            assert!(project_to_z2_free_product(&c).is_identity(), "conjugate by {g:?}");
        }

        // s survives with its order
        let s = w(p, &[Letter::S(1)]);
        let ps = project_to_z2_free_product(&s);
        assert_eq!(ps.letters(), &[Letter::S(1)]);
        let mut acc = ps.clone();
        for _ in 1..p {
            acc = word_multiply(&acc, &ps).unwrap();
        }
        assert!(acc.is_identity());
    }

    #[test]
    fn z2_projection_is_homomorphism() {
        let p = 3;
        let a = w(p, &[Letter::T(3), Letter::S(1)]);
        let b = w(p, &[Letter::T(-1), Letter::S(2), Letter::T(2)]);
        let lhs = project_to_z2_free_product(&word_multiply(&a, &b).unwrap());
        let rhs = word_multiply(&project_to_z2_free_product(&a), &project_to_z2_free_product(&b))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn generation_obstruction() {
        for p in [3u32, 4] {
            let candidates = vec![
                FreeProductWord::t_power(p, 1).unwrap(),
                word_conjugate(
                    &FreeProductWord::t_power(p, 1).unwrap(),
                    &w(p, &[Letter::S(1), Letter::T(2)]),
                )
                .unwrap(),
            ];
            let verdict = dehn_twist_generation_obstruction(p, &candidates).unwrap();
            assert!(!verdict.can_generate);
            assert_eq!(verdict.stuck_torsion_order, Some(p));
        }
        // degenerate p = 1: Z is generated by 1
        let verdict = dehn_twist_generation_obstruction(1, &[]).unwrap();
        assert!(verdict.can_generate);
        // bad candidate rejected
        let bad = vec![w(4, &[Letter::T(2)])];
        assert!(dehn_twist_generation_obstruction(4, &bad).is_err());
    }

    #[test]
    fn cube_roots() {
        assert!(!cube_root_obstruction(3, (1, 0)));
        assert!(!cube_root_obstruction(4, (1, 0)));
        assert!(cube_root_obstruction(4, (3, 1))); // m = 1, t = 3: 3*3 = 9 = 1 mod 4
        // brute-force oracle over residues
        for p in [2u32, 3, 4, 5, 6, 9] {
            for z in -6i64..7 {
                for t in 0..p as i64 {
                    let direct = (-10..11).any(|m: i64| {
                        (0..p as i64).any(|u| 3 * m == z && (3 * u - t) % p as i64 == 0)
                    });
                    assert_eq!(
                        cube_root_obstruction(p, (z, t)),
                        direct,
                        "p={p}, target=({z},{t})"
                    );
                }
            }
        }
    }

    #[test]
    fn stacky_group_axioms() {
        for action in [WordAction::Trivial, WordAction::InvertOnFricke] {
            let g = StackyGroup::new(2, 4, action).unwrap();
            let t = FrickeElement::translation(2);
            let wn = FrickeElement::fricke_involution(2);
            let elems = [
                g.identity(),
                g.element(t.clone(), w(4, &[Letter::T(1)])).unwrap(),
                g.element(wn.clone(), w(4, &[Letter::S(1), Letter::T(-2)])).unwrap(),
                g.element(
                    crate::fricke::fricke_compose(&t, &wn).unwrap(),
                    w(4, &[Letter::S(3)]),
                )
                .unwrap(),
            ];
            // identity
            for e in &elems {
                let le = g.compose(&g.identity(), e).unwrap();
                assert_eq!(&le, e);
                let re = g.compose(e, &g.identity()).unwrap();
                assert_eq!(&re, e);
            }
            // associativity
            for a in &elems {
                for b in &elems {
                    for c in &elems {
                        let x = g.compose(&g.compose(a, b).unwrap(), c).unwrap();
                        let y = g.compose(a, &g.compose(b, c).unwrap()).unwrap();
                        assert_eq!(x, y);
                    }
                }
            }
            // inverses
            for e in &elems {
                let inv = g.inverse(e);
                let prod = g.compose(&inv, e).unwrap();
                assert_eq!(prod, g.identity());
                let prod = g.compose(e, &inv).unwrap();
                assert_eq!(prod, g.identity());
            }
        }
    }
}
