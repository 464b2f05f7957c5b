use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module<F: FnOnce(&Bound<'_, PyModule>)>(f: F) {
    Python::initialize();
    Python::attach(|py| {
        let m = pyo3::wrap_pymodule!(goldilocks_py::goldilocks)(py);
        f(m.bind(py).cast::<PyModule>().unwrap());
    });
}

#[test]
fn levels_from_python() {
    with_module(|m| {
        let got: Vec<(f64, usize)> = m
            .getattr("levels")
            .unwrap()
            .call1((0.0, 3.0))
            .unwrap()
            .extract()
            .unwrap();
        assert_eq!(got, vec![(1.0, 1), (2.0, 2), (3.0, 3)]);
    });
}

#[test]
fn keyword_arguments_and_errors() {
    with_module(|m| {
        let py = m.py();
        let kw = PyDict::new(py);
        kw.set_item("stats", "bosons3").unwrap();
        let got: Vec<(f64, usize)> = m
            .getattr("levels")
            .unwrap()
            .call((std::f64::consts::FRAC_PI_2, 7.0), Some(&kw))
            .unwrap()
            .extract()
            .unwrap();
        assert_eq!(got[0], (4.0, 1));
        let err = m
            .getattr("angular_root")
            .unwrap()
            .call1((7u8, 0usize, 0.1))
            .unwrap_err();
        assert!(err.is_instance_of::<pyo3::exceptions::PyValueError>(py));
    });
}

#[test]
fn roots_are_dicts() {
    with_module(|m| {
        let roots = m.getattr("roots").unwrap().call1((3u8, 6.0, 0.5)).unwrap();
        let first = roots.get_item(0).unwrap();
        let irrep: String = first.get_item("irrep").unwrap().extract().unwrap();
        assert!(irrep == "B1" || irrep == "B2");
    });
}
