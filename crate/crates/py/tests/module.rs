use pyo3::prelude::*;
use pyo3::types::PyDict;

#[test]
fn module_answers_from_python() {
    Python::initialize();
    Python::attach(|py| {
        let m = pyo3::wrap_pymodule!(basicity_py::basicity_py)(py);
        let locals = PyDict::new(py);
        locals.set_item("b", m).unwrap();
        py.run(
            c"
sq = b.PointSet([(0, 0), (0, 1), (1, 0), (1, 1)])
assert not sq.is_basic()
l = b.PointSet.parse('0 0\\n1 0\\n0 1\\n')
assert l.lightning_index() == 2
g = b.Graph([('c', x) for x in 'abdef'])
assert g.check()['has_t5']
assert b.solve_game('2\\n1 1\\n2 2\\n') == 'V.I. wins'
",
            None,
            Some(&locals),
        )
        .unwrap();
    });
}
