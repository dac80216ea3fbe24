//! Vector measures on the line made of finitely many atoms and a piecewise
//! constant density, with their total and anisotropic total variation.

use serde::{Deserialize, Serialize};

use crate::body::ConvexBody;
use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::scalar::{Scalar, Tol};
use crate::vec2::Vec2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom<T> {
    pub at: T,
    pub vector: Vec2<T>,
}

/// Constant vector density on the closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Density<T> {
    pub lo: T,
    pub hi: T,
    pub vector: Vec2<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteVectorMeasure<T> {
    atoms: Vec<Atom<T>>,
    densities: Vec<Density<T>>,
}

impl<T: Scalar> DiscreteVectorMeasure<T> {
    /// Atoms must sit at distinct points and density intervals must not overlap.
    pub fn new(mut atoms: Vec<Atom<T>>, mut densities: Vec<Density<T>>) -> Result<Self> {
        if atoms.iter().any(|a| !a.at.is_finite() || !a.vector.is_finite()) {
            return Err(Error::InvalidMeasure("non-finite atom".into()));
        }
        if densities.iter().any(|d| !(d.lo < d.hi) || !d.lo.is_finite() || !d.hi.is_finite() || !d.vector.is_finite()) {
            return Err(Error::InvalidMeasure("density intervals must be finite with lo < hi".into()));
        }
        atoms.sort_by(|a, b| a.at.partial_cmp(&b.at).expect("finite"));
        if atoms.windows(2).any(|w| w[0].at == w[1].at) {
            return Err(Error::InvalidMeasure("two atoms share a location".into()));
        }
        densities.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("finite"));
        if densities.windows(2).any(|w| w[1].lo < w[0].hi) {
            return Err(Error::InvalidMeasure("density intervals overlap".into()));
        }
        Ok(DiscreteVectorMeasure { atoms, densities })
    }

    pub fn zero() -> Self {
        DiscreteVectorMeasure { atoms: Vec::new(), densities: Vec::new() }
    }

    pub fn atomic(atoms: impl IntoIterator<Item = (T, Vec2<T>)>) -> Result<Self> {
        Self::new(atoms.into_iter().map(|(at, vector)| Atom { at, vector }).collect(), Vec::new())
    }

    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    pub fn densities(&self) -> &[Density<T>] {
        &self.densities
    }

    /// `μ + s·ν`, atoms at equal locations merged, densities refined.
    pub fn add_scaled(&self, other: &Self, s: T) -> Self {
        let mut atoms = self.atoms.clone();
        for a in &other.atoms {
            let w = a.vector * s;
            match atoms.iter_mut().find(|b| b.at == a.at) {
                Some(b) => b.vector += w,
                None => atoms.push(Atom { at: a.at, vector: w }),
            }
        }
        atoms.sort_by(|a, b| a.at.partial_cmp(&b.at).expect("finite"));

        let mut cuts: Vec<T> = self.densities.iter().chain(&other.densities).flat_map(|d| [d.lo, d.hi]).collect();
        cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        cuts.dedup();
        let density_at =
            |m: &Self, x: T| m.densities.iter().find(|d| d.lo <= x && x <= d.hi).map_or(Vec2::zero(), |d| d.vector);
        let densities = cuts
            .windows(2)
            .filter_map(|w| {
                let mid = (w[0] + w[1]) * T::half();
                let vector = density_at(self, mid) + density_at(other, mid) * s;
                (vector != Vec2::zero()).then_some(Density { lo: w[0], hi: w[1], vector })
            })
            .collect();
        DiscreteVectorMeasure { atoms, densities }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, T::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, -T::one())
    }

    pub fn scale(&self, s: T) -> Self {
        Self::zero().add_scaled(self, s)
    }

    /// `μ(cell)` for the cell `[lo, hi)`, or `[lo, hi]` when `closed` is set.
    pub fn mass(&self, lo: T, hi: T, closed: bool) -> Vec2<T> {
        let inside = |x: T| lo <= x && (x < hi || (closed && x == hi));
        let atoms = self.atoms.iter().filter(|a| inside(a.at)).fold(Vec2::zero(), |acc, a| acc + a.vector);
        self.densities.iter().fold(atoms, |acc, d| {
            let len = (d.hi.min(hi) - d.lo.max(lo)).max(T::zero());
            acc + d.vector * len
        })
    }

    fn weighted(&self, g: &IntervalSet<T>, f: impl Fn(Vec2<T>) -> T) -> T {
        let atoms: T = self.atoms.iter().filter(|a| g.contains(a.at)).map(|a| f(a.vector)).sum();
        let dens: T = self.densities.iter().map(|d| f(d.vector) * g.overlap_len(d.lo, d.hi)).sum();
        atoms + dens
    }

    /// `|μ|(G)`.
    pub fn total_variation(&self, g: &IntervalSet<T>) -> T {
        self.weighted(g, Vec2::norm)
    }

    /// `|μ|_K(G) = ∫_G φ_K(dμ/d|μ|) d|μ|`.
    pub fn anisotropic_total_variation(&self, k: &ConvexBody<T>, g: &IntervalSet<T>) -> T {
        self.weighted(g, |w| k.support(w))
    }

    /// Smallest and largest point carrying mass.
    pub fn support_hull(&self) -> Option<(T, T)> {
        let pts = self.atoms.iter().map(|a| a.at).chain(self.densities.iter().flat_map(|d| [d.lo, d.hi]));
        pts.fold(None, |acc, x| match acc {
            None => Some((x, x)),
            Some((a, b)) => Some((a.min(x), b.max(x))),
        })
    }

    /// Bounded pieces of `G` that carry all of the mass of `μ⌞G`.
    fn cells(&self, g: &IntervalSet<T>) -> Vec<(T, T)> {
        let Some((a, b)) = self.support_hull() else {
            return Vec::new();
        };
        g.parts()
            .iter()
            .filter_map(|&(lo, hi)| {
                let (l, h) = (lo.max(a), hi.min(b));
                (l <= h).then_some((l, h))
            })
            .collect()
    }

    /// Number of atoms and density intervals meeting the cell; splitting a
    /// cell that meets at most one of them cannot raise the partition sum.
    fn pieces_in(&self, lo: T, hi: T, closed: bool) -> usize {
        let atoms = self.atoms.iter().filter(|a| lo <= a.at && (a.at < hi || (closed && a.at == hi))).count();
        atoms + self.densities.iter().filter(|d| d.lo < hi && d.hi > lo).count()
    }

    /// Supremum of `Σ φ_K(μ(G_h))` over partitions of `G` obtained by at most
    /// `depth` dyadic bisections of each part of `G`. The values increase
    /// with `depth` towards `|μ|_K(G)`.
    pub fn sup_partition_oracle(&self, k: &ConvexBody<T>, g: &IntervalSet<T>, depth: u32) -> T {
        fn best<T: Scalar>(m: &DiscreteVectorMeasure<T>, k: &ConvexBody<T>, lo: T, hi: T, closed: bool, d: u32) -> T {
            let whole = k.support(m.mass(lo, hi, closed));
            if d == 0 || hi <= lo || m.pieces_in(lo, hi, closed) <= 1 {
                return whole;
            }
            let mid = (lo + hi) * T::half();
            let split = best(m, k, lo, mid, false, d - 1) + best(m, k, mid, hi, closed, d - 1);
            whole.max(split)
        }
        self.cells(g).into_iter().map(|(lo, hi)| best(self, k, lo, hi, true, depth)).sum()
    }

    /// Bisection depth after which every dyadic cell of `G` holds at most one
    /// atom and no atom shares a cell with density mass; `None` if 60
    /// levels do not suffice. At this depth the oracle is exact for atomic measures.
    pub fn separating_depth(&self, g: &IntervalSet<T>) -> Option<u32> {
        let cells = self.cells(g);
        (0..=60).find(|&d| {
            cells.iter().all(|&(lo, hi)| {
                let n = 1u64 << d;
                let width = (hi - lo) / T::lit(n as f64);
                let mut counts = std::collections::BTreeMap::<u64, usize>::new();
                for a in self.atoms.iter().filter(|a| lo <= a.at && a.at <= hi) {
                    let idx = if width > T::zero() {
                        ((a.at - lo) / width).floor().to_u64().unwrap_or(0).min(n - 1)
                    } else {
                        0
                    };
                    *counts.entry(idx).or_default() += 1;
                }
                counts.iter().all(|(&idx, &c)| {
                    let (cl, ch) = (lo + width * T::lit(idx as f64), lo + width * T::lit((idx + 1) as f64));
                    c <= 1 && self.densities.iter().all(|d| d.hi <= cl || d.lo >= ch)
                })
            })
        })
    }

    /// `Σ ⟨ψ, dμ⟩` for the piecewise constant test field `ψ` that picks, on
    /// each atom and density interval, a point of `K` maximizing the pairing.
    /// Every such `ψ` has gauge at most one, and the value equals `|μ|_K(G)`.
    pub fn dual_test_value(&self, k: &ConvexBody<T>, g: &IntervalSet<T>, tol: Tol<T>) -> T {
        let pair = |w: Vec2<T>| match k.maximizer_set(w, tol) {
            Ok(face) => {
                let psi = face.center();
                debug_assert!(k.gauge(psi) <= T::one() + tol.get() * k.scale());
                psi.dot(w)
            }
            Err(_) => T::zero(),
        };
        self.weighted(g, pair)
    }
}

/// Both sides of `2|μ|_K(G) ≤ |μ + ν|_K(G) + |μ - ν|_K(G)` and of the
/// triangle inequalities for `|·|_K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parallelogram<T> {
    pub lhs: T,
    pub rhs: T,
    /// `(|μ + ν|_K, |μ|_K + |ν|_K)`.
    pub triangle: (T, T),
    /// `(|μ|_K, |μ + ν|_K + |-ν|_K)`.
    pub reverse_triangle: (T, T),
}

impl<T: Scalar> Parallelogram<T> {
    pub fn holds(&self, tol: T) -> bool {
        let ok = |(a, b): (T, T)| a <= b + tol * b.abs().max(T::one());
        ok((self.lhs, self.rhs)) && ok(self.triangle) && ok(self.reverse_triangle)
    }

    pub fn is_equality(&self, tol: T) -> bool {
        (self.rhs - self.lhs).abs() <= tol * self.rhs.abs().max(T::one())
    }
}

pub fn parallelogram_defect<T: Scalar>(
    mu: &DiscreteVectorMeasure<T>,
    nu: &DiscreteVectorMeasure<T>,
    k: &ConvexBody<T>,
    g: &IntervalSet<T>,
) -> Parallelogram<T> {
    let tv = |m: &DiscreteVectorMeasure<T>| m.anisotropic_total_variation(k, g);
    let (m, n) = (tv(mu), tv(nu));
    let (plus, minus) = (tv(&mu.add(nu)), tv(&mu.sub(nu)));
    let neg_n = tv(&nu.scale(-T::one()));
    Parallelogram { lhs: T::two() * m, rhs: plus + minus, triangle: (plus, m + n), reverse_triangle: (m, plus + neg_n) }
}

/// Whether the segment `{h + t g : t ∈ [-1, 1]}` lies in a single cone
/// `C*_K(z)`, i.e. `φ_K(h + g) + φ_K(h - g) = φ_K(2h)`.
pub fn equality_cone_check<T: Scalar>(h: Vec2<T>, g: Vec2<T>, k: &ConvexBody<T>, tol: Tol<T>) -> bool {
    k.is_additive(h + g, h - g, tol).additive
}

/// Pointwise cone condition for the pair `(μ, ν)` on every atom and density
/// piece inside `G`, with `h = dμ` and `g = dν` there.
pub fn pointwise_cone_condition<T: Scalar>(
    mu: &DiscreteVectorMeasure<T>,
    nu: &DiscreteVectorMeasure<T>,
    k: &ConvexBody<T>,
    g: &IntervalSet<T>,
    tol: Tol<T>,
) -> bool {
    let atom_of =
        |m: &DiscreteVectorMeasure<T>, x: T| m.atoms.iter().find(|a| a.at == x).map_or(Vec2::zero(), |a| a.vector);
    let dens_of = |m: &DiscreteVectorMeasure<T>, x: T| {
        m.densities.iter().find(|d| d.lo <= x && x <= d.hi).map_or(Vec2::zero(), |d| d.vector)
    };
    let atoms_ok = mu
        .atoms
        .iter()
        .chain(&nu.atoms)
        .filter(|a| g.contains(a.at))
        .all(|a| equality_cone_check(atom_of(mu, a.at), atom_of(nu, a.at), k, tol));
    let mut cuts: Vec<T> = mu.densities.iter().chain(&nu.densities).flat_map(|d| [d.lo, d.hi]).collect();
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    cuts.dedup();
    let dens_ok = cuts.windows(2).all(|w| {
        let mid = (w[0] + w[1]) * T::half();
        g.overlap_len(w[0], w[1]) <= T::zero() || equality_cone_check(dens_of(mu, mid), dens_of(nu, mid), k, tol)
    });
    atoms_ok && dens_ok
}
