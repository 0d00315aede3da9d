//! Python bindings. Terms and ordinals cross the boundary as strings,
//! certificates and reports as JSON text.

#[pyo3::pymodule]
mod lambda_omega_py {
    use lambda_omega::combinators::Construction;
    use lambda_omega::encodings::{church as church_term, godel_decode, godel_encode, seq_decode, seq_encode, unchurch, Unchurch};
    use lambda_omega::ordinals::{self, hscale, hsum, Ordinal};
    use lambda_omega::proofcheck::{check_canonical_endpiece, check_standard_form, load_certificate};
    use lambda_omega::reduction::{joinable as join, normalize as nf, JoinOutcome};
    use lambda_omega::suite::{run_suite as run, scripted_construction, SuiteConfig};
    use lambda_omega::term::{parse_term, Term};
    use num_bigint::BigUint;
    use pyo3::exceptions::PyValueError;
    use pyo3::prelude::*;

    fn value_error(e: impl std::fmt::Display) -> PyErr {
        PyValueError::new_err(e.to_string())
    }

    fn term(src: &str) -> PyResult<Term> {
        parse_term(src).map_err(value_error)
    }

    fn ordinal(src: &str) -> PyResult<Ordinal> {
        src.parse().map_err(value_error)
    }

    /// βη-normal form, or None when `fuel` runs out.
    #[pyfunction]
    #[pyo3(signature = (term_src, fuel = 10_000))]
    fn normalize(term_src: &str, fuel: u64) -> PyResult<Option<String>> {
        let n = nf(&term(term_src)?, fuel);
        Ok(n.is_normal().then(|| n.term().to_string()))
    }

    /// A common reduct of the two terms, or None.
    #[pyfunction]
    #[pyo3(signature = (m, n, fuel = 2_000))]
    fn joinable(m: &str, n: &str, fuel: u64) -> PyResult<Option<String>> {
        Ok(match join(&term(m)?, &term(n)?, fuel) {
            JoinOutcome::Joined { common, .. } => Some(common.to_string()),
            JoinOutcome::Unknown => None,
        })
    }

    #[pyfunction]
    fn church(n: u64) -> String {
        church_term(n).to_string()
    }

    #[pyfunction]
    #[pyo3(signature = (term_src, fuel = 10_000))]
    fn read_numeral(term_src: &str, fuel: u64) -> PyResult<Option<u64>> {
        Ok(match unchurch(&term(term_src)?, fuel) {
            Unchurch::Numeral(n) => Some(n),
            Unchurch::NotANumeral | Unchurch::Unknown => None,
        })
    }

    #[pyfunction]
    fn godel_index(term_src: &str) -> PyResult<BigUint> {
        Ok(godel_encode(&term(term_src)?))
    }

    #[pyfunction]
    fn godel_term(index: BigUint) -> String {
        godel_decode(&index).to_string()
    }

    #[pyfunction]
    fn seq_code(items: Vec<BigUint>) -> BigUint {
        seq_encode(&items)
    }

    #[pyfunction]
    fn seq_items(code: BigUint) -> Vec<BigUint> {
        seq_decode(&code)
    }

    #[pyfunction]
    fn ord_sum(a: &str, b: &str) -> PyResult<String> {
        Ok(hsum(&ordinal(a)?, &ordinal(b)?).to_string())
    }

    #[pyfunction]
    fn ord_scale(a: &str, n: u64) -> PyResult<String> {
        Ok(hscale(&ordinal(a)?, n).to_string())
    }

    /// -1, 0 or 1.
    #[pyfunction]
    fn ord_cmp(a: &str, b: &str) -> PyResult<i8> {
        Ok(ordinals::cmp(&ordinal(a)?, &ordinal(b)?) as i8)
    }

    /// Check a certificate file's contents; returns the verdict as JSON.
    #[pyfunction]
    #[pyo3(signature = (json, fuel = 10_000, scripted = false, standard_only = false))]
    fn check_endpiece(json: &str, fuel: u64, scripted: bool, standard_only: bool) -> PyResult<String> {
        let cert = load_certificate(json).map_err(value_error)?;
        let c = if scripted { scripted_construction() } else { Construction::canonical() };
        let v = if standard_only { check_standard_form(&cert) } else { check_canonical_endpiece(&cert, c, fuel) };
        serde_json::to_string(&v).map_err(value_error)
    }

    /// The suite report as JSON, without wall times.
    #[pyfunction]
    #[pyo3(signature = (seed = 0, ids = None))]
    fn run_suite(py: Python<'_>, seed: u64, ids: Option<Vec<u32>>) -> PyResult<String> {
        let cfg = SuiteConfig { seed, fuel: None, only: ids.map(|v| v.into_iter().collect()) };
        let mut report = py.detach(|| run(&cfg));
        report.strip_timings();
        serde_json::to_string(&report).map_err(value_error)
    }
}
