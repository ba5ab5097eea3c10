//! Small named posets that recur in tests, examples and documentation.

use crate::poset::Poset;

/// `x0 < c1 < ... < c{k-1}`.
pub fn chain(k: usize) -> Poset {
    assert!(k >= 1);
    let labels: Vec<String> = std::iter::once("x0".to_string()).chain((1..k).map(|i| format!("c{i}"))).collect();
    let covers: Vec<(String, String)> = labels.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    Poset::new(labels, covers).unwrap()
}

/// `x0 < u`, `x0 < v`.
pub fn diamond() -> Poset {
    Poset::new(["x0", "u", "v"], [("x0", "u"), ("x0", "v")]).unwrap()
}

/// `x0 < c1 < c2` and `x0 < z`.
pub fn poset_a() -> Poset {
    Poset::new(["x0", "c1", "c2", "z"], [("x0", "c1"), ("c1", "c2"), ("x0", "z")]).unwrap()
}

fn two_chains(m: usize, extra: &[(String, String)]) -> Poset {
    let mut labels = vec!["x0".to_string()];
    labels.extend((1..=m).map(|i| format!("z{i}")));
    labels.extend((1..=m).map(|i| format!("z{i}'")));
    let mut covers = vec![("x0".to_string(), "z1".to_string()), ("x0".to_string(), "z1'".to_string())];
    for i in 1..m {
        covers.push((format!("z{i}"), format!("z{}", i + 1)));
        covers.push((format!("z{i}'"), format!("z{}'", i + 1)));
    }
    covers.push(("z1'".to_string(), format!("z{m}")));
    covers.extend(extra.iter().cloned());
    Poset::new(labels, covers).unwrap()
}

/// Two chains `z1 < ... < zm` and `z1' < ... < zm'` over `x0`, with `z1' ◁ zm`.
pub fn p_m(m: usize) -> Poset {
    two_chains(m, &[])
}

/// [`p_m`] with the extra cover `z1 ◁ zm'`.
pub fn q_m(m: usize) -> Poset {
    two_chains(m, &[("z1".to_string(), format!("z{m}'"))])
}

/// [`p_m`] with the extra covers `z_i ◁ z'_{i+1}` for each listed `i`.
pub fn p_m_with_steps(m: usize, steps: &[usize]) -> Poset {
    let extra: Vec<(String, String)> = steps.iter().map(|&i| (format!("z{i}"), format!("z{}'", i + 1))).collect();
    two_chains(m, &extra)
}
