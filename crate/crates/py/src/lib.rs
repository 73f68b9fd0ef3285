//! Python bindings: `permrf.Tower` plus module-level functions over it.
//! Elements cross the boundary as canonical integer encodings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use permrf_core::bivariate::{
    build_curve, conjugate_factor_search, count_offdiag_points, CurveKind,
};
use permrf_core::gf::{parse_u32_list, Level, DEFAULT_BUDGET};
use permrf_core::linmaps::LinearizedPoly;
use permrf_core::ratfunc::{self, Method, RatFuncSpec};
use permrf_core::verify::{self, Mode, Suite, SuiteConfig};
use permrf_core::{bivariate, Element, FieldTower, TowerSpec};

fn err(e: permrf_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// The tower `F_p ⊂ F_q ⊂ F_{q^n}`.
#[pyclass(frozen, module = "permrf")]
pub struct Tower {
    inner: FieldTower,
}

impl Tower {
    fn elem(&self, k: u32) -> PyResult<Element> {
        self.inner.decode(k as u64, Level::Top).map_err(err)
    }
}

#[pymethods]
impl Tower {
    #[new]
    #[pyo3(signature = (field, modulus_g=None, modulus_h=None, budget=DEFAULT_BUDGET))]
    fn new(field: &str, modulus_g: Option<&str>, modulus_h: Option<&str>, budget: u64) -> PyResult<Self> {
        let mut spec: TowerSpec = field.parse().map_err(err)?;
        spec.g = modulus_g.map(parse_u32_list).transpose().map_err(err)?;
        spec.h = modulus_h.map(parse_u32_list).transpose().map_err(err)?;
        Ok(Tower {
            inner: spec.build(budget).map_err(err)?,
        })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }
    #[getter]
    fn m(&self) -> u32 {
        self.inner.m()
    }
    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }
    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }
    #[getter]
    fn size(&self) -> u32 {
        self.inner.size()
    }
    #[getter]
    fn g(&self) -> Vec<u32> {
        self.inner.g().to_vec()
    }
    #[getter]
    fn h(&self) -> Vec<u32> {
        self.inner.h().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("Tower('{}')", self.inner.spec())
    }

    fn __len__(&self) -> usize {
        self.inner.size() as usize
    }

    fn add(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.add(self.elem(a)?, self.elem(b)?).0)
    }
    fn sub(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.sub(self.elem(a)?, self.elem(b)?).0)
    }
    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.mul(self.elem(a)?, self.elem(b)?).0)
    }
    fn div(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.inner.div(self.elem(a)?, self.elem(b)?).map_err(err)?.0)
    }
    fn neg(&self, a: u32) -> PyResult<u32> {
        Ok(self.inner.neg(self.elem(a)?).0)
    }
    fn inv(&self, a: u32) -> PyResult<u32> {
        Ok(self.inner.invert(self.elem(a)?).map_err(err)?.0)
    }
    fn pow(&self, a: u32, e: u64) -> PyResult<u32> {
        Ok(self.inner.pow(self.elem(a)?, e).0)
    }

    #[pyo3(signature = (a, i=1))]
    fn frobenius(&self, a: u32, i: u32) -> PyResult<u32> {
        Ok(self.inner.frobenius(self.elem(a)?, i).0)
    }
    fn trace(&self, a: u32) -> PyResult<u32> {
        Ok(self.inner.trace(self.elem(a)?).0)
    }
    fn trace_rel(&self, a: u32, from_degree: u32, to_degree: u32) -> PyResult<u32> {
        Ok(self.inner.trace_rel(self.elem(a)?, from_degree, to_degree).map_err(err)?.0)
    }
    fn norm(&self, a: u32) -> PyResult<u32> {
        Ok(self.inner.norm(self.elem(a)?).0)
    }
    fn is_in_base(&self, a: u32) -> PyResult<bool> {
        Ok(self.inner.is_in_base(self.elem(a)?))
    }
    fn coords(&self, a: u32) -> PyResult<Vec<u32>> {
        Ok(self.inner.coords(self.elem(a)?))
    }
    fn dual_basis(&self, basis: Vec<u32>) -> PyResult<Vec<u32>> {
        let basis = basis.into_iter().map(|k| self.elem(k)).collect::<PyResult<Vec<_>>>()?;
        Ok(self.inner.dual_basis(&basis).map_err(err)?.iter().map(|a| a.0).collect())
    }
    fn basis_det_b(&self, b: u32) -> PyResult<u32> {
        Ok(self.inner.basis_det_b(self.elem(b)?).map_err(err)?.0)
    }
    fn render(&self, a: u32) -> PyResult<String> {
        Ok(self.inner.render(self.elem(a)?))
    }
    fn non_base_elements(&self) -> Vec<u32> {
        self.inner.non_base_elements().map(|a| a.0).collect()
    }
}

/// `(rank, kernel, image)` of `L(x) = Σ a_i x^{q^i}`.
#[pyfunction]
fn linearized_analysis(tower: &Tower, coeffs: Vec<u32>) -> PyResult<(usize, Vec<u32>, Vec<u32>)> {
    let coeffs = coeffs.into_iter().map(|k| tower.elem(k)).collect::<PyResult<Vec<_>>>()?;
    let l = LinearizedPoly::new(&tower.inner, &coeffs).map_err(err)?;
    let a = l.analyse(&tower.inner);
    Ok((
        a.rank,
        a.kernel.iter().map(|x| x.0).collect(),
        a.image.iter().map(|x| x.0).collect(),
    ))
}

#[pyfunction]
fn closed_form_c(tower: &Tower, b: u32) -> PyResult<u32> {
    Ok(ratfunc::closed_form_c(&tower.inner, tower.elem(b)?).map_err(err)?.0)
}

#[pyfunction]
#[pyo3(signature = (tower, b, budget=DEFAULT_BUDGET))]
fn classify_c(py: Python<'_>, tower: &Tower, b: u32, budget: u64) -> PyResult<Vec<u32>> {
    let b = tower.elem(b)?;
    let set = py
        .detach(|| ratfunc::classify_c(&tower.inner, b, budget))
        .map_err(err)?;
    Ok(set.iter().map(|c| c.0).collect())
}

/// Permutation verdict and first witness pair, if any.
#[pyfunction]
#[pyo3(signature = (tower, b, c, method="pairwise", coeffs=None, budget=DEFAULT_BUDGET))]
fn is_permutation(
    tower: &Tower,
    b: u32,
    c: u32,
    method: &str,
    coeffs: Option<Vec<u32>>,
    budget: u64,
) -> PyResult<(bool, Option<(u32, u32)>)> {
    let t = &tower.inner;
    let method: Method = method.parse().map_err(err)?;
    let l = match coeffs {
        Some(cs) => {
            let cs = cs.into_iter().map(|k| tower.elem(k)).collect::<PyResult<Vec<_>>>()?;
            LinearizedPoly::new(t, &cs).map_err(err)?
        }
        None => LinearizedPoly::identity(t),
    };
    let spec = RatFuncSpec::new(t, l, tower.elem(c)?, tower.elem(b)?).map_err(err)?;
    let v = ratfunc::is_permutation(t, &spec, method, budget).map_err(err)?;
    Ok((v.permutes, v.witness.map(|(x, y)| (x.0, y.0))))
}

#[pyfunction]
fn kernel_criterion(tower: &Tower, b: u32, c: u32) -> PyResult<Option<(u32, u32)>> {
    let w = ratfunc::kernel_criterion(&tower.inner, tower.elem(b)?, tower.elem(c)?);
    Ok(w.map(|(x, y)| (x.0, y.0)))
}

/// Coefficient grid `[i][j]` of `X^i Y^j` for `which ∈ {f2, f3, f3kernel}`.
#[pyfunction]
fn curve(tower: &Tower, b: u32, c: u32, which: &str) -> PyResult<Vec<Vec<u32>>> {
    let kind: CurveKind = which.parse().map_err(err)?;
    let f = build_curve(&tower.inner, kind, tower.elem(b)?, tower.elem(c)?).map_err(err)?;
    Ok(f.grid().iter().map(|row| row.iter().map(|a| a.0).collect()).collect())
}

/// `(β, γ, δ)` of the first conjugate bilinear factor, or `None`.
#[pyfunction]
#[pyo3(signature = (tower, b, c, budget=DEFAULT_BUDGET))]
fn factor_search(tower: &Tower, b: u32, c: u32, budget: u64) -> PyResult<Option<(u32, u32, u32)>> {
    let t = &tower.inner;
    let kind = if t.n() == 2 { CurveKind::F2 } else { CurveKind::F3 };
    let f = build_curve(t, kind, tower.elem(b)?, tower.elem(c)?).map_err(err)?;
    let g = conjugate_factor_search(t, &f, budget).map_err(err)?;
    Ok(g.map(|g| (g.beta.0, g.gamma.0, g.delta.0)))
}

#[pyfunction]
fn offdiag_points(tower: &Tower, b: u32, c: u32, which: &str) -> PyResult<u64> {
    let kind: CurveKind = which.parse().map_err(err)?;
    let f = build_curve(&tower.inner, kind, tower.elem(b)?, tower.elem(c)?).map_err(err)?;
    Ok(count_offdiag_points(&tower.inner, &f))
}

#[pyfunction]
fn weil_holds(q: u64, d: u32) -> PyResult<bool> {
    bivariate::weil_holds(q, d).map_err(err)
}

#[pyfunction]
fn weil_threshold(d: u32) -> PyResult<f64> {
    bivariate::weil_threshold(d).map_err(err)
}

/// Runs a verification suite and returns its reports as a JSON string.
#[pyfunction]
#[pyo3(signature = (suite, qs=None, n=None, mode="auto", seed=0, samples=1000, budget=DEFAULT_BUDGET))]
#[allow(clippy::too_many_arguments)]
fn run_suite(
    py: Python<'_>,
    suite: &str,
    qs: Option<Vec<u64>>,
    n: Option<u32>,
    mode: &str,
    seed: u64,
    samples: usize,
    budget: u64,
) -> PyResult<String> {
    let suite: Suite = suite.parse().map_err(err)?;
    let mode: Mode = mode.parse().map_err(err)?;
    let cfg = SuiteConfig {
        seed,
        budget,
        timing: false,
        samples,
    };
    let reports = py
        .detach(|| verify::run_suite(suite, qs.as_deref(), n, mode, &cfg))
        .map_err(err)?;
    serde_json::to_string(&reports).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn permrf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Tower>()?;
    m.add_function(wrap_pyfunction!(linearized_analysis, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_c, m)?)?;
    m.add_function(wrap_pyfunction!(classify_c, m)?)?;
    m.add_function(wrap_pyfunction!(is_permutation, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(curve, m)?)?;
    m.add_function(wrap_pyfunction!(factor_search, m)?)?;
    m.add_function(wrap_pyfunction!(offdiag_points, m)?)?;
    m.add_function(wrap_pyfunction!(weil_holds, m)?)?;
    m.add_function(wrap_pyfunction!(weil_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
