use super::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Face of a nondegenerate simplex in a truncated simplicial set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Face {
    /// Index into the nondegenerate simplices one degree down.
    Simplex(usize),
    Degenerate,
}

/// A simplicial set truncated at `max_dim`, presented by its nondegenerate
/// simplices and their face maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSetTrunc {
    labels: Vec<Vec<String>>,
    /// `faces[k][s]` has `k + 1` entries for `k >= 1`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<Face>>>,
}

impl SimplicialSetTrunc {
    /// Validates shapes, face targets and the simplicial identities
    /// `d_i d_j = d_{j-1} d_i` (i < j) wherever both sides are nondegenerate.
    pub fn new(labels: Vec<Vec<String>>, faces: Vec<Vec<Vec<Face>>>) -> Result<Self> {
        if labels.is_empty() || faces.len() != labels.len() {
            return Err(Error::Invalid("need one label and face list per degree".into()));
        }
        for (k, level) in faces.iter().enumerate() {
            if k == 0 {
                if !level.is_empty() {
                    return Err(Error::Invalid("degree 0 simplices have no faces".into()));
                }
                continue;
            }
            if level.len() != labels[k].len() {
                return Err(Error::Invalid(format!("degree {k}: face list count mismatch")));
            }
            for (s, fs) in level.iter().enumerate() {
                if fs.len() != k + 1 {
                    return Err(Error::Invalid(format!(
                        "{} has {} faces, expected {}",
                        labels[k][s],
                        fs.len(),
                        k + 1
                    )));
                }
                for f in fs {
                    if let Face::Simplex(t) = f {
                        if *t >= labels[k - 1].len() {
                            return Err(Error::Invalid(format!(
                                "{} has a face outside degree {}",
                                labels[k][s],
                                k - 1
                            )));
                        }
                    }
                }
            }
        }
        let out = SimplicialSetTrunc { labels, faces };
        out.check_identities()?;
        Ok(out)
    }

    fn check_identities(&self) -> Result<()> {
        for k in 2..self.labels.len() {
            for s in 0..self.labels[k].len() {
                for j in 0..=k {
                    for i in 0..j {
                        let lhs = self.compose_face(k, s, j, i);
                        let rhs = self.compose_face(k, s, i, j - 1);
                        if let (Some(Face::Simplex(a)), Some(Face::Simplex(b))) = (lhs, rhs) {
                            if a != b {
                                return Err(Error::Invalid(format!(
                                    "simplicial identity d{i}d{j} = d{}d{i} fails on {}",
                                    j - 1,
                                    self.labels[k][s]
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `d_second d_first` of simplex `s` in degree `k`; `None` when the inner
    /// face is degenerate and the composite is not determined here.
    fn compose_face(&self, k: usize, s: usize, first: usize, second: usize) -> Option<Face> {
        match self.faces[k][s][first] {
            Face::Simplex(t) => Some(self.faces[k - 1][t][second]),
            Face::Degenerate => None,
        }
    }

    /// The nondegenerate presentation of a simplicial complex, truncated at `d`.
    pub fn from_complex(k: &SimplicialComplex, d: usize) -> Self {
        let mut labels = Vec::with_capacity(d + 1);
        let mut faces = Vec::with_capacity(d + 1);
        for deg in 0..=d {
            let simplices = k.simplices_of_dim(deg);
            labels.push(simplices.iter().map(|s| s.token()).collect());
            if deg == 0 {
                faces.push(Vec::new());
                continue;
            }
            faces.push(
                simplices
                    .iter()
                    .map(|s| {
                        (0..s.len())
                            .map(|i| {
                                let f = s.delete(i).expect("positive dimension");
                                Face::Simplex(k.position(&f).expect("closed under faces"))
                            })
                            .collect()
                    })
                    .collect(),
            );
        }
        SimplicialSetTrunc { labels, faces }
    }

    pub fn max_dim(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn num_simplices(&self, k: usize) -> usize {
        self.labels.get(k).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn labels(&self, k: usize) -> &[String] {
        &self.labels[k]
    }

    pub fn faces(&self, k: usize, s: usize) -> &[Face] {
        &self.faces[k][s]
    }

    pub fn face(&self, k: usize, s: usize, i: usize) -> Face {
        self.faces[k][s][i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::cx;

    #[test]
    fn complex_presentation_satisfies_identities() {
        let k = cx(&[&["a", "b", "c", "d"]]);
        let s = SimplicialSetTrunc::from_complex(&k, 3);
        assert_eq!(s.counts(), vec![4, 6, 4, 1]);
        assert!(SimplicialSetTrunc::new(s.labels.clone(), s.faces.clone()).is_ok());
    }

    #[test]
    fn broken_identity_is_rejected() {
        let labels = vec![
            vec!["x".to_string(), "y".to_string()],
            vec!["e".to_string(), "f".to_string(), "g".to_string()],
            vec!["t".to_string()],
        ];
        // d0 d1 t should equal d0 d0 t.
        let faces = vec![
            vec![],
            vec![
                vec![Face::Simplex(0), Face::Simplex(0)],
                vec![Face::Simplex(1), Face::Simplex(0)],
                vec![Face::Simplex(0), Face::Simplex(1)],
            ],
            vec![vec![Face::Simplex(0), Face::Simplex(1), Face::Simplex(2)]],
        ];
        assert!(SimplicialSetTrunc::new(labels, faces).is_err());
    }

    #[test]
    fn shape_errors() {
        assert!(SimplicialSetTrunc::new(vec![], vec![]).is_err());
        let labels = vec![vec!["x".to_string()], vec!["e".to_string()]];
        let faces = vec![vec![], vec![vec![Face::Simplex(0)]]];
        assert!(SimplicialSetTrunc::new(labels, faces).is_err());
    }
}
