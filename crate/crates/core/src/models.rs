//! The bundled example corpus, constructed programmatically.
//!
//! Algebras: the ground field itself, exterior algebras on one and two odd
//! generators, a truncated polynomial algebra, a two-term acyclic dg algebra,
//! and three deliberately corrupted presentations (one per axiom). Calculus
//! packages: the trivial rank-one package and a capped one-variable
//! Landau-Ginzburg style package with a cubic potential member (the classical
//! two-dimensional Jacobian ring case), plus an entry that fails the
//! degeneration gate.

use crate::dg::DgAlgebraSpec;
use crate::graded::{BasisElt, GradedBasisSpace, LinMap, Vector};
use crate::scalar::{q, qq, Q};

/// Convenience builder for finite dg algebra presentations with integer
/// degrees (weights equal degrees, parity is degree mod 2).
pub struct AlgebraBuilder {
    names: Vec<String>,
    degs: Vec<i64>,
    unit: usize,
    products: Vec<Vec<Vector>>,
    diff_cols: Vec<Vector>,
    w: Q,
    connected: bool,
}

impl AlgebraBuilder {
    pub fn new(basis: &[(&str, i64)], unit: &str, w: Q) -> Self {
        let names: Vec<String> = basis.iter().map(|(n, _)| n.to_string()).collect();
        let degs: Vec<i64> = basis.iter().map(|(_, d)| *d).collect();
        let unit = names.iter().position(|n| n == unit).expect("unit in basis");
        let n = names.len();
        let mut products = vec![vec![Vector::zero(); n]; n];
        // unit acts as identity by default
        for i in 0..n {
            products[unit][i] = Vector::basis(i);
            products[i][unit] = Vector::basis(i);
        }
        AlgebraBuilder {
            names,
            degs,
            unit,
            products,
            diff_cols: vec![Vector::zero(); n],
            w,
            connected: true,
        }
    }

    fn idx(&self, name: &str) -> usize {
        self.names.iter().position(|n| n == name).unwrap_or_else(|| panic!("unknown basis element {name}"))
    }

    pub fn product(mut self, a: &str, b: &str, terms: &[(&str, i64)]) -> Self {
        let (i, j) = (self.idx(a), self.idx(b));
        let mut v = Vector::zero();
        for (n, c) in terms {
            v.set(self.idx(n), q(*c));
        }
        self.products[i][j] = v;
        self
    }

    pub fn diff(mut self, a: &str, terms: &[(&str, i64)]) -> Self {
        let i = self.idx(a);
        let mut v = Vector::zero();
        for (n, c) in terms {
            v.set(self.idx(n), q(*c));
        }
        self.diff_cols[i] = v;
        self
    }

    pub fn not_connected(mut self) -> Self {
        self.connected = false;
        self
    }

    pub fn build(self, label: &str) -> DgAlgebraSpec {
        let basis: Vec<BasisElt> = self
            .names
            .iter()
            .zip(self.degs.iter())
            .map(|(n, &d)| BasisElt::new(n.clone(), q(d), q(d), d.rem_euclid(2) as u8))
            .collect();
        let space = GradedBasisSpace::new(label, basis).expect("valid space");
        let diff = LinMap {
            source: space.clone(),
            target: space.clone(),
            map_deg: q(1),
            map_wt: q(1),
            cols: self.diff_cols,
        };
        DgAlgebraSpec {
            space,
            mult: self.products,
            diff,
            unit_index: self.unit,
            cy_dimension: self.w,
            connected: self.connected,
        }
    }
}

/// The ground field as a dg algebra; Calabi-Yau of dimension zero.
pub fn trivial_algebra() -> DgAlgebraSpec {
    AlgebraBuilder::new(&[("1", 0)], "1", q(0)).build("k")
}

/// Exterior algebra on `n` odd generators (n = 1 or 2), zero differential.
pub fn exterior_algebra(n: usize) -> DgAlgebraSpec {
    match n {
        1 => AlgebraBuilder::new(&[("1", 0), ("x", 1)], "1", q(1))
            .product("x", "x", &[])
            .build("ext1"),
        2 => AlgebraBuilder::new(&[("1", 0), ("x", 1), ("y", 1), ("xy", 2)], "1", q(2))
            .product("x", "x", &[])
            .product("y", "y", &[])
            .product("x", "y", &[("xy", 1)])
            .product("y", "x", &[("xy", -1)])
            .product("x", "xy", &[])
            .product("xy", "x", &[])
            .product("y", "xy", &[])
            .product("xy", "y", &[])
            .product("xy", "xy", &[])
            .build("ext2"),
        _ => panic!("only 1 or 2 generators bundled"),
    }
}

/// k[x]/x^3 with x in degree one (associative, not graded-commutative).
pub fn truncated_polynomial_algebra() -> DgAlgebraSpec {
    AlgebraBuilder::new(&[("1", 0), ("x", 1), ("x2", 2)], "1", q(0))
        .product("x", "x", &[("x2", 1)])
        .product("x", "x2", &[])
        .product("x2", "x", &[])
        .product("x2", "x2", &[])
        .build("polytrunc")
}

/// Two-term acyclic dg algebra: d(x) = y, quasi-isomorphic to the ground field.
pub fn two_stage_acyclic_algebra() -> DgAlgebraSpec {
    AlgebraBuilder::new(&[("1", 0), ("x", 1), ("y", 2)], "1", q(0))
        .product("x", "x", &[])
        .product("x", "y", &[])
        .product("y", "x", &[])
        .product("y", "y", &[])
        .diff("x", &[("y", 1)])
        .build("acyclic2")
}

/// d(x) = y, d(y) = z: the differential fails to square to zero, everything
/// else holds (all non-unit products vanish).
pub fn corrupted_d_squared() -> DgAlgebraSpec {
    let mut b = AlgebraBuilder::new(&[("1", 0), ("x", 1), ("y", 2), ("z", 3)], "1", q(0));
    for a in ["x", "y", "z"] {
        for c in ["x", "y", "z"] {
            b = b.product(a, c, &[]);
        }
    }
    b.diff("x", &[("y", 1)])
        .diff("y", &[("z", 1)])
        .not_connected()
        .build("corrupt-d2")
}

/// d(e) = x on an idempotent e with e*x = x*e = 0: Leibniz fails on (e, e),
/// the differential still squares to zero and products associate.
pub fn corrupted_leibniz() -> DgAlgebraSpec {
    AlgebraBuilder::new(&[("1", 0), ("e", 0), ("x", 1)], "1", q(0))
        .product("e", "e", &[("e", 1)])
        .product("e", "x", &[])
        .product("x", "e", &[])
        .product("x", "x", &[])
        .diff("e", &[("x", 1)])
        .not_connected()
        .build("corrupt-leibniz")
}

/// Products chosen so that exactly associativity fails:
/// (a*b)*b = w while a*(b*b) = 0.
pub fn corrupted_associativity() -> DgAlgebraSpec {
    let mut b = AlgebraBuilder::new(&[("1", 0), ("a", 1), ("b", 1), ("c", 2), ("w", 3)], "1", q(0));
    for x in ["a", "b", "c", "w"] {
        for y in ["a", "b", "c", "w"] {
            b = b.product(x, y, &[]);
        }
    }
    b.product("a", "b", &[("c", 1)])
        .product("b", "a", &[("c", 1)])
        .product("b", "b", &[("c", 1)])
        .product("c", "b", &[("w", 1)])
        .not_connected()
        .build("corrupt-assoc")
}

/// All valid dg algebra corpus entries.
pub fn valid_algebras() -> Vec<DgAlgebraSpec> {
    vec![
        trivial_algebra(),
        exterior_algebra(1),
        exterior_algebra(2),
        truncated_polynomial_algebra(),
        two_stage_acyclic_algebra(),
    ]
}

/// All corrupted dg algebra corpus entries.
pub fn corrupted_algebras() -> Vec<DgAlgebraSpec> {
    vec![corrupted_d_squared(), corrupted_leibniz(), corrupted_associativity()]
}

// Calculus-package corpus entries are defined in `models::packages` (added
// alongside the calculus module) — see below.
pub use packages::*;

pub mod packages {
    use super::*;
    use crate::calculus::{CalculusPackage, CyData, OpTable};

    /// Rank-one package: everything is scalar, w = 0.
    pub fn trivial_package() -> (CalculusPackage, CyData) {
        let t_space = GradedBasisSpace::new(
            "T(k)",
            vec![BasisElt::new("one", q(0), q(0), 0)],
        )
        .unwrap();
        let o_space = GradedBasisSpace::new(
            "O(k)",
            vec![BasisElt::new("v", q(0), q(0), 0)],
        )
        .unwrap();
        let d_t = LinMap::zero(&t_space, &t_space, q(1), q(1));
        let d_o = LinMap::zero(&o_space, &o_space, q(1), q(1));
        let b_op = LinMap::zero(&o_space, &o_space, q(-1), q(0));
        let mut prod = OpTable::zero(&t_space, &t_space, &t_space);
        prod.set(0, 0, Vector::basis(0));
        let bracket = OpTable::zero(&t_space, &t_space, &t_space);
        let mut i_tbl = OpTable::zero(&t_space, &o_space, &o_space);
        i_tbl.set(0, 0, Vector::basis(0));
        let l_tbl = OpTable::zero(&t_space, &o_space, &o_space);
        let pkg = CalculusPackage {
            t_space,
            o_space,
            d_t,
            d_o,
            prod,
            bracket,
            b_op,
            i_tbl,
            l_tbl,
            f_class: Vector::zero(),
            deg_class: Vector::zero(),
            unit_class: Vector::basis(0),
            w: q(0),
            wt_window: None,
            complete_below: None,
            length_data: None,
        };
        let cy = CyData {
            w: q(0),
            v1: Vector::basis(0),
            trace: vec![(0, Q::one())],
            strict: false,
        };
        (pkg, cy)
    }

    /// Capped one-variable Landau-Ginzburg style package.
    ///
    /// T = k[x]/cap ⊗ Λ[θ] with the cubic member x^3 as distinguished class,
    /// O = forms f_a = x^a dx and contracted lines g_a = x^a (θ-contraction
    /// of f_a), a = 0..cap for f, 1..cap for g... (g_0 is present: the
    /// boundary operator sends it to 3 f_2 and the cyclic operator kills it).
    ///
    /// Degrees are 2/3 per x-power (so the cubic sits in degree two), weights
    /// are the normalized ones with the volume form at weight zero; the
    /// certified weight window is declared andchecks outside it are
    /// skipped, not asserted.
    pub fn lg_cubic_package(cap: usize) -> (CalculusPackage, CyData) {
        assert!(cap >= 6);
        let m = cap;
        // T basis: x^a (a = 0..m), x^a θ (a = 0..m)
        let mut t_basis = Vec::new();
        for a in 0..=m {
            t_basis.push(BasisElt::new(format!("x{a}"), qq(2 * a as i64, 3), qq(a as i64, 3), 0));
        }
        for a in 0..=m {
            t_basis.push(BasisElt::new(
                format!("x{a}th"),
                qq(2 * a as i64 + 1, 3),
                qq(a as i64 - 1, 3),
                1,
            ));
        }
        let t_space = GradedBasisSpace::new("T(lg3)", t_basis).unwrap();
        let xi = |a: usize| a; // index of x^a
        let ti = |a: usize| m + 1 + a; // index of x^a θ

        // O basis: f_a = x^a dx (a = 0..m), g_a = x^a ∂⌟dx (a = 0..m)
        let mut o_basis = Vec::new();
        for a in 0..=m {
            o_basis.push(BasisElt::new(format!("f{a}"), qq(2 * a as i64 + 1, 3), qq(a as i64, 3), 0));
        }
        for a in 0..=m {
            o_basis.push(BasisElt::new(
                format!("g{a}"),
                qq(2 * a as i64 + 2, 3),
                qq(a as i64 - 1, 3),
                1,
            ));
        }
        let o_space = GradedBasisSpace::new("O(lg3)", o_basis).unwrap();
        let fi = |a: usize| a;
        let gi = |a: usize| m + 1 + a;

        // d_T = [x^3, -]: evens -> 0, x^a θ -> 3 x^{a+2}
        let mut d_t = LinMap::zero(&t_space, &t_space, q(1), q(1));
        for a in 0..=m {
            if a + 2 <= m {
                d_t.set(xi(a + 2), ti(a), q(3));
            }
        }
        // d_O: f -> 0, g_a -> 3 f_{a+2}
        let mut d_o = LinMap::zero(&o_space, &o_space, q(1), q(1));
        for a in 0..=m {
            if a + 2 <= m {
                d_o.set(fi(a + 2), gi(a), q(3));
            }
        }
        // B: f -> 0, g_a -> a f_{a-1}
        let mut b_op = LinMap::zero(&o_space, &o_space, q(-1), q(0));
        for a in 1..=m {
            b_op.set(fi(a - 1), gi(a), q(a as i64));
        }

        // product on T: commutative, θ^2 = 0
        let mut prod = OpTable::zero(&t_space, &t_space, &t_space);
        for a in 0..=m {
            for b in 0..=m {
                if a + b <= m {
                    prod.set(xi(a), xi(b), Vector::basis(xi(a + b)));
                    prod.set(xi(a), ti(b), Vector::basis(ti(a + b)));
                    prod.set(ti(a), xi(b), Vector::basis(ti(a + b)));
                }
                // θ·θ = 0
            }
        }

        // bracket: [x^a θ, x^b] = b x^{a+b-1} * (-1)?  Fixed by the
        // seven-term identity for the divergence Δ(x^a θ) = a x^{a-1}:
        //   [X, Y] = (-1)^{|X|} Δ(X∘Y) - (-1)^{|X|} Δ(X)∘Y - X∘Δ(Y)
        let mut bracket = OpTable::zero(&t_space, &t_space, &t_space);
        for a in 0..=m {
            for b in 0..=m {
                if a + b >= 1 && a + b - 1 <= m {
                    // [x^a θ, x^b] = -(Δ(x^{a+b}θ) - Δ(x^aθ) x^b) = -b x^{a+b-1}
                    if b >= 1 {
                        bracket.set(ti(a), xi(b), Vector::basis(xi(a + b - 1)).scaled(&q(-(b as i64))));
                        // graded antisymmetry [f,g] = -(-1)^{(par f -1)(par g -1)}[g,f]
                        // here par(x^aθ)=1, par(x^b)=0: [x^b, x^aθ] = -(-1)^{0·(-1)}... = +b x^{a+b-1}
                        bracket.set(xi(b), ti(a), Vector::basis(xi(a + b - 1)).scaled(&q(b as i64)));
                    }
                    // [x^aθ, x^bθ] = (a - b) x^{a+b-1} θ
                    bracket.set(
                        ti(a),
                        ti(b),
                        Vector::basis(ti(a + b - 1)).scaled(&q(a as i64 - b as i64)),
                    );
                }
            }
        }

        // contraction table: i_{x^a}(f_b) = f_{a+b}, i_{x^a}(g_b) = g_{a+b},
        // i_{x^aθ}(f_b) = g_{a+b}, i_{x^aθ}(g_b) = 0
        let mut i_tbl = OpTable::zero(&t_space, &o_space, &o_space);
        for a in 0..=m {
            for b in 0..=m {
                if a + b <= m {
                    i_tbl.set(xi(a), fi(b), Vector::basis(fi(a + b)));
                    i_tbl.set(xi(a), gi(b), Vector::basis(gi(a + b)));
                    i_tbl.set(ti(a), fi(b), Vector::basis(gi(a + b)));
                }
            }
        }

        // Lie table: L_X := -[B, i_X] with the commutator graded by parity of X.
        //   L_{x^a}(f_b) = 0
        //   L_{x^a}(g_b) = -(B i - i B)(g_b) = -((a+b) - b) f_{a+b-1} = -a f_{a+b-1}
        //   L_{x^aθ}(f_b) = -(B i + i B)(f_b) = -(a+b) f_{a+b-1}
        //   L_{x^aθ}(g_b) = -(B i + i B)(g_b) = -b g_{a+b-1}
        let mut l_tbl = OpTable::zero(&t_space, &o_space, &o_space);
        for a in 0..=m {
            for b in 0..=m {
                if a + b >= 1 && a + b - 1 <= m {
                    if a >= 1 {
                        l_tbl.set(xi(a), gi(b), Vector::basis(fi(a + b - 1)).scaled(&q(-(a as i64))));
                    }
                    l_tbl.set(ti(a), fi(b), Vector::basis(fi(a + b - 1)).scaled(&q(-((a + b) as i64))));
                    if b >= 1 {
                        l_tbl.set(ti(a), gi(b), Vector::basis(gi(a + b - 1)).scaled(&q(-(b as i64))));
                    }
                }
            }
        }

        let pkg = CalculusPackage {
            t_space,
            o_space,
            d_t,
            d_o,
            prod,
            bracket,
            b_op,
            i_tbl,
            l_tbl,
            f_class: Vector::basis(xi(3)),
            deg_class: Vector::basis(ti(1)).scaled(&qq(-1, 3)),
            unit_class: Vector::basis(xi(0)),
            w: qq(1, 3),
            wt_window: Some((qq(-1, 3), qq(m as i64 - 4, 3))),
            complete_below: Some(qq(m as i64 - 1, 3)),
            length_data: None,
        };
        let cy = CyData {
            w: qq(1, 3),
            v1: Vector::basis(fi(0)),
            trace: vec![(fi(1), Q::one())],
            strict: false,
        };
        (pkg, cy)
    }
}
