//! Moebius transformations of the projective line over an exact field,
//! three-point interpolation, rationality testing, the splitting field of
//! the 2-division cubic of an elliptic curve with its three 2-isogenous
//! curves, and Galois descent of rational maps through a marked-point
//! correspondence.

use crate::arith::{
    is_rational_square, isqrt, ArithError, ExtElem, ExtField, Field, Poly, ProjPoint, Rat,
    RationalMapP1, UniPoly,
};
use crate::elliptic::WeierstrassCurve;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

/// `z -> (a z + b) / (c z + d)` with `ad - bc != 0`, stored canonically:
/// the first nonzero coefficient in the order (a, b, c, d) is 1. The
/// canonical form makes equality and rationality testing well-defined on
/// the projective coefficient tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct Moebius<F: Field> {
    a: F,
    b: F,
    c: F,
    d: F,
}

impl<F: Field> Moebius<F> {
    pub fn new(a: F, b: F, c: F, d: F) -> Result<Self, ArithError> {
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        if det.is_zero() {
            return Err(ArithError::InvalidInput("singular coefficient matrix"));
        }
        let lead = [&a, &b, &c, &d]
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("nonsingular matrix is nonzero")
            .clone();
        let li = lead.inv().expect("nonzero");
        Ok(Moebius {
            a: a * li.clone(),
            b: b * li.clone(),
            c: c * li.clone(),
            d: d * li,
        })
    }

    pub fn identity(ctx: &F) -> Self {
        Moebius {
            a: ctx.one_like(),
            b: ctx.zero_like(),
            c: ctx.zero_like(),
            d: ctx.one_like(),
        }
    }

    /// Coefficients (a, b, c, d) in canonical scaling.
    pub fn coeffs(&self) -> [&F; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// `self` after `other`: z -> self(other(z)).
    pub fn compose(&self, other: &Self) -> Self {
        Moebius::new(
            self.a.clone() * other.a.clone() + self.b.clone() * other.c.clone(),
            self.a.clone() * other.b.clone() + self.b.clone() * other.d.clone(),
            self.c.clone() * other.a.clone() + self.d.clone() * other.c.clone(),
            self.c.clone() * other.b.clone() + self.d.clone() * other.d.clone(),
        )
        .expect("product of nonsingular matrices")
    }

    pub fn invert(&self) -> Self {
        Moebius::new(
            self.d.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
        .expect("inverse of nonsingular matrix")
    }

    pub fn apply(&self, p: &ProjPoint<F>) -> ProjPoint<F> {
        let (x, y) = p.coords();
        ProjPoint::new(
            self.a.clone() * x.clone() + self.b.clone() * y.clone(),
            self.c.clone() * x.clone() + self.d.clone() * y.clone(),
        )
        .expect("nonsingular matrix maps points to points")
    }

    /// The affine value, `None` at the pole.
    pub fn apply_affine(&self, z: &F) -> Option<F> {
        let den = self.c.clone() * z.clone() + self.d.clone();
        den.inv()
            .map(|di| (self.a.clone() * z.clone() + self.b.clone()) * di)
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Result<Moebius<G>, ArithError> {
        Moebius::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }
}

/// Descent of a Moebius transformation to the rationals: succeeds exactly
/// when all four canonical coefficients lie in the prime field.
pub fn is_rational_map<F: Field>(m: &Moebius<F>) -> Option<Moebius<Rat>> {
    let a = m.a.to_rat()?;
    let b = m.b.to_rat()?;
    let c = m.c.to_rat()?;
    let d = m.d.to_rat()?;
    Some(Moebius::new(a, b, c, d).expect("determinant is preserved"))
}

/// Three source points and their three intended images; pairwise distinct
/// within each side, so the interpolating Moebius transformation is unique.
#[derive(Clone, Debug, PartialEq)]
pub struct Correspondence<F: Field> {
    sources: [ProjPoint<F>; 3],
    targets: [ProjPoint<F>; 3],
}

impl<F: Field> Correspondence<F> {
    pub fn new(sources: [ProjPoint<F>; 3], targets: [ProjPoint<F>; 3]) -> Result<Self, ArithError> {
        for pts in [&sources, &targets] {
            if pts[0] == pts[1] || pts[0] == pts[2] || pts[1] == pts[2] {
                return Err(ArithError::InvalidInput(
                    "correspondence points must be pairwise distinct",
                ));
            }
        }
        Ok(Correspondence { sources, targets })
    }

    pub fn sources(&self) -> &[ProjPoint<F>; 3] {
        &self.sources
    }

    pub fn targets(&self) -> &[ProjPoint<F>; 3] {
        &self.targets
    }
}

/// One-dimensional kernel of a 3x4 matrix of full rank.
fn kernel_3x4<F: Field>(mut m: Vec<Vec<F>>) -> Result<[F; 4], ArithError> {
    let ctx = m[0][0].clone();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut row = 0;
    for col in 0..4 {
        if row == 3 {
            break;
        }
        let Some(pr) = (row..3).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].inv().expect("pivot nonzero");
        for c2 in col..4 {
            m[row][c2] = m[row][c2].clone() * inv.clone();
        }
        for i in 0..3 {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c2 in col..4 {
                    m[i][c2] = m[i][c2].clone() - f.clone() * m[row][c2].clone();
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    if row < 3 {
        return Err(ArithError::InvalidInput(
            "degenerate correspondence: interpolation system is rank-deficient",
        ));
    }
    let free = (0..4)
        .find(|c| !pivots.iter().any(|&(_, pc)| pc == *c))
        .expect("rank 3 of 4 columns leaves a free column");
    let mut sol = vec![ctx.zero_like(), ctx.zero_like(), ctx.zero_like(), ctx.zero_like()];
    sol[free] = ctx.one_like();
    for &(r, pc) in &pivots {
        sol[pc] = -m[r][free].clone();
    }
    let [a, b, c, d] = [sol[0].clone(), sol[1].clone(), sol[2].clone(), sol[3].clone()];
    Ok([a, b, c, d])
}

/// The unique Moebius transformation sending the three source points to
/// the three target points, by solving the homogeneous linear system
/// y_i (a u_i + b v_i) - x_i (c u_i + d v_i) = 0 for [u_i : v_i] -> [x_i : y_i].
pub fn moebius_from_three<F: Field>(corr: &Correspondence<F>) -> Result<Moebius<F>, ArithError> {
    let mut rows: Vec<Vec<F>> = Vec::with_capacity(3);
    for i in 0..3 {
        let (u, v) = corr.sources[i].coords();
        let (x, y) = corr.targets[i].coords();
        rows.push(vec![
            y.clone() * u.clone(),
            y.clone() * v.clone(),
            -(x.clone() * u.clone()),
            -(x.clone() * v.clone()),
        ]);
    }
    let [a, b, c, d] = kernel_3x4(rows)?;
    let m = Moebius::new(a, b, c, d)?;
    for i in 0..3 {
        if m.apply(&corr.sources[i]) != corr.targets[i] {
            return Err(ArithError::Integrity("interpolation failed to verify"));
        }
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// 2-division splitting fields and isogenous curves
// ---------------------------------------------------------------------------

/// First tower stage: Q adjoin one root of the 2-division cubic (or of its
/// quadratic cofactor), trivial when the cubic splits over Q.
pub type Stage1 = ExtElem<Rat>;
/// Full splitting tower: at most one further quadratic stage.
pub type Tower = ExtElem<Stage1>;

/// The 2-torsion field data of a rational elliptic curve: the splitting
/// tower of the 2-division cubic, its three roots, and the three
/// 2-isogenous curves with their j-invariants.
#[derive(Clone, Debug)]
pub struct TwoTorsionData {
    base: WeierstrassCurve<Rat>,
    degree: usize,
    field: Rc<ExtField<Stage1>>,
    roots: [Tower; 3],
    curves: [WeierstrassCurve<Tower>; 3],
    js: [Tower; 3],
}

impl TwoTorsionData {
    pub fn base(&self) -> &WeierstrassCurve<Rat> {
        &self.base
    }

    /// Degree of the splitting field over Q: 1, 2, 3 or 6.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> &Rc<ExtField<Stage1>> {
        &self.field
    }

    pub fn roots(&self) -> &[Tower; 3] {
        &self.roots
    }

    pub fn isogenous_curves(&self) -> &[WeierstrassCurve<Tower>; 3] {
        &self.curves
    }

    pub fn j_invariants(&self) -> &[Tower; 3] {
        &self.js
    }

    /// Elementary symmetric functions of the three j-invariants; all three
    /// are rational exactly when the multiset is Galois-stable.
    pub fn j_symmetric_functions(&self) -> Option<(Rat, Rat, Rat)> {
        let [j1, j2, j3] = self.js.clone();
        let e1 = j1.clone() + j2.clone() + j3.clone();
        let e2 = j1.clone() * j2.clone() + j1.clone() * j3.clone() + j2.clone() * j3.clone();
        let e3 = j1 * j2 * j3;
        Some((e1.to_rat()?, e2.to_rat()?, e3.to_rat()?))
    }
}

/// Square root of a rational that is an exact square.
fn rat_sqrt(q: &Rat) -> Rat {
    Rat::new(isqrt(q.numer()), isqrt(q.denom()))
}

/// Construct the splitting field of the 2-division cubic of a rational
/// curve (staged: adjoin one root, factor, adjoin the quadratic cofactor's
/// root only if its discriminant demands it) and compute the three
/// 2-isogenous curves over it.
pub fn two_torsion_data(e: &WeierstrassCurve<Rat>) -> Result<TwoTorsionData, ArithError> {
    let a2 = e.a2().cloned().unwrap_or_else(Rat::zero);
    let cubic = UniPoly::new(vec![
        e.b().clone(),
        e.a().clone(),
        a2.clone(),
        Rat::one(),
    ]);
    let rational = cubic.rational_roots()?;

    // Stage 1 modulus and the roots expressed over stage 1.
    let (f1, stage1_roots): (UniPoly, Option<Vec<Poly<Rat>>>) = match rational.len() {
        3 => {
            let roots = rational.iter().map(|r| Poly::constant(r.clone())).collect();
            (UniPoly::new(vec![Rat::zero(), Rat::one()]), Some(roots))
        }
        1 => {
            // cubic = (x - r) q(x) with q an irreducible quadratic; adjoin
            // a root of q, the other root is -q1 - gen.
            let r = rational[0].clone();
            let lin = UniPoly::new(vec![-r.clone(), Rat::one()]);
            let q = cubic.div_exact(&lin)?;
            let q1 = q.coeffs()[1].clone();
            let roots = vec![
                Poly::constant(r),
                Poly::new(vec![Rat::zero(), Rat::one()]),
                Poly::new(vec![-q1, -Rat::one()]),
            ];
            (q, Some(roots))
        }
        _ => (cubic.clone(), None),
    };
    // f1 is irreducible over Q by construction: degree 1, a quadratic with
    // no rational root, or a cubic with no rational root.
    let k1 = ExtField::new_unchecked(f1.clone());

    let mut degree = f1.degree().unwrap();
    let mut s1_roots: Vec<Stage1> = Vec::new();
    let mut f2: Poly<Stage1> = Poly::new(vec![k1.zero(), k1.one()]);
    let mut deep_roots: Option<(Poly<Stage1>, Poly<Stage1>)> = None;

    match stage1_roots {
        Some(reps) => {
            for rep in reps {
                s1_roots.push(k1.element(rep));
            }
        }
        None => {
            // Irreducible cubic: alpha = gen, quotient quadratic
            // Q(x) = x^2 + p x + q over K1.
            let alpha = k1.gen();
            let cubic_k1 = cubic.map_coeffs(|c| k1.embed(c.clone()));
            let lin = Poly::new(vec![-alpha.clone(), k1.one()]);
            let quad = cubic_k1.div_exact(&lin)?;
            let p = quad.coeffs()[1].clone();
            let disc = cubic.discriminant()?;
            let half = k1.embed(Rat::new(1.into(), 2.into()));
            if is_rational_square(&disc) {
                // Galois cubic: sqrt(disc) = (r1-r2)(r1-r3)(r2-r3) is
                // rational and f'(alpha) = (alpha-r2)(alpha-r3), so
                // r2, r3 = (-p +- delta / f'(alpha)) / 2 stay in K1.
                let delta = k1.embed(rat_sqrt(&disc));
                let fprime = cubic_k1.derivative().eval(&alpha);
                let t = delta * fprime.inv().ok_or(ArithError::DivisionByZero)?;
                let r2 = (-p.clone() + t.clone()) * half.clone();
                let r3 = (-p.clone() - t) * half;
                debug_assert!(quad.eval(&r2).is_zero() && quad.eval(&r3).is_zero());
                s1_roots.push(alpha);
                s1_roots.push(r2);
                s1_roots.push(r3);
            } else {
                // Non-square discriminant: D = p^2 - 4q is not a square in
                // K1 (a cubic field has no quadratic subfield), so
                // y^2 - D is irreducible and the tower has degree 6.
                let q = quad.coeffs()[0].clone();
                let d = p.clone() * p.clone() - k1.embed(Rat::from_integer(4.into())) * q;
                f2 = Poly::new(vec![-d, k1.zero(), k1.one()]);
                degree *= 2;
                s1_roots.push(alpha);
                // The remaining two roots need the stage-2 generator:
                // (-p +- sqrt(D)) / 2, recorded as linear reps in sqrt(D).
                let half1 = Rat::new(1.into(), 2.into());
                let mp_half = -(p * k1.embed(half1.clone()));
                deep_roots = Some((
                    Poly::new(vec![mp_half.clone(), k1.embed(half1.clone())]),
                    Poly::new(vec![mp_half, k1.embed(-half1)]),
                ));
            }
        }
    }

    let k2 = ExtField::new_unchecked(f2);
    let emb = |x: &Rat| -> Tower { k2.embed(k1.embed(x.clone())) };
    let roots: [Tower; 3] = match deep_roots {
        None => {
            let r: Vec<Tower> = s1_roots.iter().map(|x| k2.embed(x.clone())).collect();
            [r[0].clone(), r[1].clone(), r[2].clone()]
        }
        Some((r2, r3)) => [
            k2.embed(s1_roots[0].clone()),
            k2.element(r2),
            k2.element(r3),
        ],
    };

    let curve_t = WeierstrassCurve::with_a2(emb(&a2), emb(e.a()), emb(e.b()))?;
    for r in &roots {
        if !curve_t.rhs(r).is_zero() {
            return Err(ArithError::Integrity("computed root is not a 2-torsion x"));
        }
    }
    let mut curves = Vec::new();
    let mut js = Vec::new();
    for r in &roots {
        let (cod, j) = curve_t.two_isogeny(r)?;
        curves.push(cod);
        js.push(j);
    }
    Ok(TwoTorsionData {
        base: e.clone(),
        degree,
        field: k2,
        roots,
        curves: [curves[0].clone(), curves[1].clone(), curves[2].clone()],
        js: [js[0].clone(), js[1].clone(), js[2].clone()],
    })
}

// ---------------------------------------------------------------------------
// Descent of rational maps
// ---------------------------------------------------------------------------

/// Failure to descend: the composed map kept an irrational coefficient.
#[derive(Clone, Debug, PartialEq)]
pub enum TransportError<F: Field> {
    Arith(ArithError),
    /// The offending coefficient after canonical normalization.
    NotRational {
        numerator: bool,
        index: usize,
        coefficient: F,
    },
}

impl<F: Field> From<ArithError> for TransportError<F> {
    fn from(e: ArithError) -> Self {
        TransportError::Arith(e)
    }
}

/// Transport a map defined over an extension field to Q: interpolate the
/// Moebius transformation phi sending the marked source points to their
/// intended images, form g o phi^{-1}, normalize, and verify every
/// coefficient is rational.
pub fn transport_map<F: Field>(
    g: &RationalMapP1<F>,
    sources: &[ProjPoint<F>; 3],
    targets: &[ProjPoint<F>; 3],
) -> Result<RationalMapP1<Rat>, TransportError<F>> {
    let corr = Correspondence::new(sources.clone(), targets.clone())?;
    let phi = moebius_from_three(&corr)?;
    let inv = phi.invert();
    let [a, b, c, d] = inv.coeffs();
    let composed = g.precompose_moebius(a, b, c, d)?;
    // Canonical scaling: make the leading denominator (or else numerator)
    // coefficient 1 so rationality of the tuple is well-defined.
    let lead = composed
        .den()
        .leading()
        .or_else(|| composed.num().leading())
        .expect("nonzero map")
        .clone();
    let scaled = composed.scaled(&lead.inv().expect("leading coefficient nonzero"))?;
    let mut num_coeffs: Vec<Rat> = Vec::new();
    for (i, co) in scaled.num().coeffs().iter().enumerate() {
        match co.to_rat() {
            Some(q) => num_coeffs.push(q),
            None => {
                return Err(TransportError::NotRational {
                    numerator: true,
                    index: i,
                    coefficient: co.clone(),
                })
            }
        }
    }
    let mut den_coeffs: Vec<Rat> = Vec::new();
    for (i, co) in scaled.den().coeffs().iter().enumerate() {
        match co.to_rat() {
            Some(q) => den_coeffs.push(q),
            None => {
                return Err(TransportError::NotRational {
                    numerator: false,
                    index: i,
                    coefficient: co.clone(),
                })
            }
        }
    }
    Ok(RationalMapP1::new(
        Poly::new(num_coeffs),
        Poly::new(den_coeffs),
    )?)
}
