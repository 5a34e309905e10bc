use serde::Serialize;

use crate::error::{Error, Result};
use crate::grobner::FreeElement;
use crate::poly::{Context, MonomialOrder, Polynomial};

/// `⊕_i A(−twists[i])`. The x-weights give each generator a base degree,
/// used only for Hilbert functions over R when m > 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedFreeModule {
    pub twists: Vec<i64>,
    pub x_weights: Vec<i64>,
}

impl GradedFreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        let x_weights = vec![0; twists.len()];
        GradedFreeModule { twists, x_weights }
    }

    pub fn with_weights(twists: Vec<i64>, x_weights: Vec<i64>) -> Self {
        assert_eq!(twists.len(), x_weights.len());
        GradedFreeModule { twists, x_weights }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    /// The order used for Gröbner computations in this module.
    pub fn order(&self, ctx: Context) -> MonomialOrder {
        MonomialOrder::block(ctx, self.twists.clone())
    }

    /// Twist-negated dual `⊕ A(twists[i])`.
    pub fn dual(&self) -> Self {
        GradedFreeModule { twists: self.twists.iter().map(|t| -t).collect(), x_weights: self.x_weights.iter().map(|t| -t).collect() }
    }
}

/// `G = coker(φ: F1 → F0)`. Column `j` of `matrix` is `φ(e_j) ∈ F0`,
/// homogeneous of degree `source.twists[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPresentation {
    pub ctx: Context,
    pub target: GradedFreeModule,
    pub source: GradedFreeModule,
    pub matrix: Vec<FreeElement>,
}

impl GradedPresentation {
    /// Validates homogeneity of every column against the declared twists.
    pub fn new(ctx: Context, target: GradedFreeModule, source: GradedFreeModule, matrix: Vec<FreeElement>) -> Result<Self> {
        if source.rank() != matrix.len() {
            return Err(Error::InvalidInput(format!("{} source twists for {} relations", source.rank(), matrix.len())));
        }
        for (j, col) in matrix.iter().enumerate() {
            if col.ctx() != ctx {
                return Err(Error::ContextMismatch { left: ctx, right: col.ctx() });
            }
            if let Some(c) = col.max_component() {
                if c >= target.rank() {
                    return Err(Error::InvalidInput(format!("relation {} uses component {} of a rank-{} module", j + 1, c, target.rank())));
                }
            }
            for (c, p) in col.components() {
                let want = source.twists[j] - target.twists[c];
                for (m, _) in p.terms() {
                    let got = ctx.xi_degree(m) as i64;
                    if got != want {
                        return Err(Error::NotHomogeneous {
                            column: j + 1,
                            detail: format!(
                                "component {} has a term of fiber degree {got}, expected {want} (= F1 twist {} - F0 twist {})",
                                c + 1,
                                source.twists[j],
                                target.twists[c]
                            ),
                        });
                    }
                }
            }
        }
        Ok(GradedPresentation { ctx, target, source, matrix })
    }

    /// Builds the presentation, reading each relation's degree off the
    /// relation itself. Zero columns are dropped; x-weights of the relations
    /// are their base degrees.
    pub fn from_columns(ctx: Context, target: GradedFreeModule, columns: Vec<FreeElement>) -> Result<Self> {
        let mut twists = Vec::new();
        let mut xw = Vec::new();
        let mut cols = Vec::new();
        for (j, c) in columns.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = c.graded_degree(&target.twists).ok_or_else(|| Error::NotHomogeneous { column: j + 1, detail: "terms of different degrees".into() })?;
            twists.push(d);
            xw.push(c.x_weight(&target.x_weights).unwrap_or(0));
            cols.push(c);
        }
        Self::new(ctx, target, GradedFreeModule::with_weights(twists, xw), cols)
    }

    pub fn free(ctx: Context, twists: Vec<i64>) -> Self {
        GradedPresentation { ctx, target: GradedFreeModule::new(twists), source: GradedFreeModule::new(vec![]), matrix: vec![] }
    }

    pub fn zero(ctx: Context) -> Self {
        Self::free(ctx, vec![])
    }

    /// `A/(u_i : i ∈ vars)` (0-based variable indices).
    pub fn koszul_quotient(ctx: Context, vars: &[usize]) -> Self {
        let cols = vars.iter().map(|&i| FreeElement::from_components(ctx, [(0, Polynomial::u(ctx, i))])).collect();
        Self::from_columns(ctx, GradedFreeModule::new(vec![0]), cols).expect("monomial relations are homogeneous")
    }

    /// `A/I` for the irrelevant ideal.
    pub fn a_mod_i(ctx: Context) -> Self {
        Self::koszul_quotient(ctx, &(0..ctx.n).collect::<Vec<_>>())
    }

    pub fn ngens(&self) -> usize {
        self.target.rank()
    }

    /// `G(p)`, so that `slice(G(p), d) = slice(G, d + p)`.
    pub fn shift_grading(&self, p: i64) -> Self {
        let sh = |f: &GradedFreeModule| GradedFreeModule { twists: f.twists.iter().map(|t| t - p).collect(), x_weights: f.x_weights.clone() };
        GradedPresentation { ctx: self.ctx, target: sh(&self.target), source: sh(&self.source), matrix: self.matrix.clone() }
    }

    /// Pullback along `u_i ↦ −u_i`: matrix terms of odd fiber degree change sign.
    pub fn sign_twist(&self) -> Self {
        GradedPresentation {
            ctx: self.ctx,
            target: self.target.clone(),
            source: self.source.clone(),
            matrix: self.matrix.iter().map(|c| c.sign_twist()).collect(),
        }
    }

    /// Smallest and largest generator twist.
    pub fn twist_range(&self) -> Option<(i64, i64)> {
        let t = &self.target.twists;
        Some((*t.iter().min()?, *t.iter().max()?))
    }
}
