use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use super::big_pow;
use crate::error::{input, parse_err, Error, Result};
use crate::trees::{sample_tree, Vertex};

/// One tree of a spanning forest: its vertex set and its edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestComponent {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

/// A spanning forest of the complete graph on `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestSpec {
    n: usize,
    components: Vec<ForestComponent>,
}

impl ForestSpec {
    /// Validates that the components partition `[n]` and each is a tree.
    pub fn from_components(n: usize, components: Vec<ForestComponent>) -> Result<Self> {
        if n < 1 {
            return Err(Error::Domain("forests need n >= 1".into()));
        }
        let mut seen = BTreeSet::new();
        let mut normalised = Vec::with_capacity(components.len());
        for comp in components {
            let mut vertices = comp.vertices;
            vertices.sort_unstable();
            if vertices.is_empty() {
                return input("empty forest component");
            }
            for &v in &vertices {
                if v == 0 || v > n {
                    return input(format!("label {v} outside 1..={n}"));
                }
                if !seen.insert(v) {
                    return input(format!("label {v} appears in two components"));
                }
            }
            let mut edges: Vec<_> = comp.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
            edges.sort_unstable();
            if edges.len() + 1 != vertices.len() {
                return input(format!(
                    "component {vertices:?} has {} edges, a tree needs {}",
                    edges.len(),
                    vertices.len() - 1
                ));
            }
            let index: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let mut dsu: Vec<usize> = (0..vertices.len()).collect();
            for &(u, v) in &edges {
                let (Some(&iu), Some(&iv)) = (index.get(&u), index.get(&v)) else {
                    return input(format!("edge {u}-{v} leaves its component"));
                };
                let (ru, rv) = (root(&mut dsu, iu), root(&mut dsu, iv));
                if ru == rv {
                    return input(format!("edge {u}-{v} closes a cycle"));
                }
                dsu[ru] = rv;
            }
            normalised.push(ForestComponent { vertices, edges });
        }
        if seen.len() != n {
            return input(format!("components cover {} of the {n} labels", seen.len()));
        }
        normalised.sort_by(|a, b| a.vertices[0].cmp(&b.vertices[0]));
        Ok(ForestSpec {
            n,
            components: normalised,
        })
    }

    /// Builds the forest induced by an acyclic edge set; untouched labels
    /// become singleton components.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut dsu: Vec<usize> = (0..=n).collect();
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > n || v > n || u == v {
                return input(format!("bad forest edge {u}-{v}"));
            }
            let (ru, rv) = (root(&mut dsu, u), root(&mut dsu, v));
            if ru == rv {
                return input(format!("edge {u}-{v} closes a cycle"));
            }
            dsu[ru] = rv;
        }
        let mut groups: HashMap<usize, ForestComponent> = HashMap::new();
        for v in 1..=n {
            let r = root(&mut dsu, v);
            groups
                .entry(r)
                .or_insert_with(|| ForestComponent {
                    vertices: vec![],
                    edges: vec![],
                })
                .vertices
                .push(v);
        }
        for &(u, v) in edges {
            let r = root(&mut dsu, u);
            groups.get_mut(&r).unwrap().edges.push((u, v));
        }
        Self::from_components(n, groups.into_values().collect())
    }

    /// Parses `1-2;3;4`: components separated by `;`, each either one label
    /// or a comma separated list of `u-v` edges.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut components = Vec::new();
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                return parse_err(1, "empty forest component");
            }
            if components.len() >= n {
                return parse_err(1, format!("more than {n} components for n={n}"));
            }
            let mut comp = ForestComponent {
                vertices: vec![],
                edges: vec![],
            };
            if part.contains('-') {
                let mut vertices = BTreeSet::new();
                for item in part.split(',') {
                    let Some((u, v)) = item.trim().split_once('-') else {
                        return parse_err(1, format!("expected `u-v`, got {item:?}"));
                    };
                    let (u, v) = (label(u)?, label(v)?);
                    vertices.insert(u);
                    vertices.insert(v);
                    comp.edges.push((u, v));
                }
                comp.vertices = vertices.into_iter().collect();
            } else {
                comp.vertices.push(label(part)?);
            }
            components.push(comp);
        }
        Self::from_components(n, components).map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[ForestComponent] {
        &self.components
    }

    /// Component sizes `q_1, …, q_m`.
    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.vertices.len()).collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.components.iter().flat_map(|c| c.edges.iter().copied())
    }
}

impl std::fmt::Display for ForestSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, comp) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            if comp.edges.is_empty() {
                write!(f, "{}", comp.vertices[0])?;
            }
            for (j, (u, v)) in comp.edges.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{u}-{v}")?;
            }
        }
        Ok(())
    }
}

fn label(s: &str) -> Result<Vertex> {
    s.trim()
        .parse()
        .or_else(|_| parse_err(1, format!("bad vertex label {s:?}")))
}

fn root(dsu: &mut [usize], mut x: usize) -> usize {
    while dsu[x] != x {
        dsu[x] = dsu[dsu[x]];
        x = dsu[x];
    }
    x
}

/// A random spanning forest of `[n]`: the edges of a uniform random tree,
/// each kept independently with probability `keep`.
pub fn sample_forest<R: Rng + ?Sized>(n: usize, keep: f64, rng: &mut R) -> Result<ForestSpec> {
    if !(0.0..=1.0).contains(&keep) {
        return input(format!("edge retention probability {keep} outside [0, 1]"));
    }
    let tree = sample_tree(n, rng)?;
    let edges: Vec<(Vertex, Vertex)> = tree.edges().iter().copied().filter(|_| rng.random_bool(keep)).collect();
    ForestSpec::from_edges(n, &edges)
}

/// Trees on `[n]` containing every edge of the forest: `q_1 ⋯ q_m · n^(m−2)`.
pub fn count_trees_containing_forest(spec: &ForestSpec) -> BigUint {
    let n = spec.n as u64;
    let product: BigUint = spec.sizes().iter().fold(BigUint::one(), |acc, &q| acc * q as u64);
    let m = spec.components.len() as u64;
    if m >= 2 {
        product * big_pow(n, m - 2)
    } else {
        // A single component is a spanning tree: q_1 = n and n · n^(-1) = 1.
        product / n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        let spanning = ForestSpec::from_edges(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(count_trees_containing_forest(&spanning), BigUint::from(1u32));
        let one_edge = ForestSpec::parse(4, "1-2;3;4").unwrap();
        assert_eq!(one_edge.sizes(), vec![2, 1, 1]);
        assert_eq!(count_trees_containing_forest(&one_edge), BigUint::from(8u32));
        let two_edges = ForestSpec::from_edges(5, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(count_trees_containing_forest(&two_edges), BigUint::from(20u32));
        let empty = ForestSpec::from_edges(6, &[]).unwrap();
        assert_eq!(count_trees_containing_forest(&empty), BigUint::from(1296u32));
    }

    #[test]
    fn parse_and_display() {
        let f = ForestSpec::parse(5, " 3 ; 2-1, 4-2 ;5").unwrap();
        assert_eq!(f.to_string(), "1-2,2-4;3;5");
        assert_eq!(ForestSpec::parse(5, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn rejects_bad_forests() {
        for (n, text) in [
            (4, "1-2;3"),
            (4, "1-2;2;3;4"),
            (4, "1-2,2-3,1-3;4"),
            (4, "1-2;3-3;4"),
            (4, "1-5;3;4"),
            (4, ""),
            (4, "1-2;;3;4"),
            (4, "1-x;3;4"),
            (3, "1,2;3"),
        ] {
            assert!(ForestSpec::parse(n, text).is_err(), "{text:?}");
        }
        assert!(ForestSpec::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).is_err());
        assert!(ForestSpec::from_components(
            4,
            vec![
                ForestComponent {
                    vertices: vec![1, 2, 3],
                    edges: vec![(1, 2)]
                },
                ForestComponent {
                    vertices: vec![4],
                    edges: vec![]
                }
            ]
        )
        .is_err());
    }
}
