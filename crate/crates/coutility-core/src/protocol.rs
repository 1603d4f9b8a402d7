//! Enumerable protocols: total mappings from (per-agent inputs, auxiliary
//! input) to strategy profiles.
//!
//! Inputs are opaque labels. For coordination protocols they are reported
//! types; for co-utile protocols the domains are typically singletons that
//! the mapping ignores. Outputs are strategy labels resolved against a game
//! when a check runs.

use crate::enumerate::index_product;
use crate::error::{Error, Result};

/// Auxiliary domain used when a protocol takes no auxiliary input.
pub const NO_AUX: &str = "none";

/// A protocol as an exhaustive lookup table.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolTable {
    input_domains: Vec<Vec<String>>,
    aux_domain: Vec<String>,
    /// `outputs[input_flat * aux_len + aux_idx]`, strategy labels per agent.
    outputs: Vec<Vec<String>>,
}

impl ProtocolTable {
    /// Builds a table from a mapping evaluated on every (inputs, aux) pair.
    pub fn from_fn(
        input_domains: Vec<Vec<String>>,
        aux_domain: Vec<String>,
        mut mapping: impl FnMut(&[&str], &str) -> Vec<String>,
    ) -> Result<Self> {
        if input_domains.iter().any(Vec::is_empty) {
            return Err(Error::DomainMismatch(
                "every input domain must be non-empty".into(),
            ));
        }
        let aux_domain = if aux_domain.is_empty() {
            vec![NO_AUX.to_string()]
        } else {
            aux_domain
        };
        let sizes: Vec<usize> = input_domains.iter().map(Vec::len).collect();
        let mut outputs = Vec::new();
        for combo in index_product(&sizes) {
            let labels: Vec<&str> = combo
                .iter()
                .zip(&input_domains)
                .map(|(&i, d)| d[i].as_str())
                .collect();
            for aux in &aux_domain {
                outputs.push(mapping(&labels, aux));
            }
        }
        Ok(Self {
            input_domains,
            aux_domain,
            outputs,
        })
    }

    /// A protocol that outputs the same strategy profile on every input.
    /// Input domains are per-agent singletons `"*"`.
    pub fn constant(agent_count: usize, output: Vec<String>) -> Self {
        Self::from_fn(
            vec![vec!["*".to_string()]; agent_count],
            vec![NO_AUX.to_string()],
            |_, _| output.clone(),
        )
        .expect("constant table is total")
    }

    /// Builds a table from explicit rows; the rows must cover every
    /// (inputs, aux) combination exactly once.
    pub fn from_rows(
        input_domains: Vec<Vec<String>>,
        aux_domain: Vec<String>,
        rows: &[(Vec<String>, String, Vec<String>)],
    ) -> Result<Self> {
        if input_domains.iter().any(Vec::is_empty) {
            return Err(Error::DomainMismatch(
                "every input domain must be non-empty".into(),
            ));
        }
        let aux_domain = if aux_domain.is_empty() {
            vec![NO_AUX.to_string()]
        } else {
            aux_domain
        };
        let sizes: Vec<usize> = input_domains.iter().map(Vec::len).collect();
        let aux_len = aux_domain.len();
        let total: usize = sizes.iter().product::<usize>() * aux_len;
        let mut outputs: Vec<Option<Vec<String>>> = vec![None; total];
        for (inputs, aux, output) in rows {
            if inputs.len() != input_domains.len() {
                return Err(Error::DomainMismatch(format!(
                    "row has {} inputs, expected {}",
                    inputs.len(),
                    input_domains.len()
                )));
            }
            let mut flat = 0usize;
            for (agent, (label, domain)) in inputs.iter().zip(&input_domains).enumerate() {
                let idx = domain.iter().position(|l| l == label).ok_or_else(|| {
                    Error::DomainMismatch(format!(
                        "input {label:?} not in agent {agent}'s input domain"
                    ))
                })?;
                flat = flat * domain.len() + idx;
            }
            let aux_idx = aux_domain
                .iter()
                .position(|l| l == aux)
                .ok_or_else(|| Error::DomainMismatch(format!("aux {aux:?} not in aux domain")))?;
            let slot = flat * aux_len + aux_idx;
            if outputs[slot].is_some() {
                return Err(Error::DuplicateProtocolRow {
                    inputs: inputs.clone(),
                    aux: aux.clone(),
                });
            }
            outputs[slot] = Some(output.clone());
        }
        let mut filled = Vec::with_capacity(total);
        for (slot, output) in outputs.into_iter().enumerate() {
            match output {
                Some(o) => filled.push(o),
                None => {
                    let aux = aux_domain[slot % aux_len].clone();
                    let mut rest = slot / aux_len;
                    let mut inputs = vec![String::new(); input_domains.len()];
                    for agent in (0..input_domains.len()).rev() {
                        let len = input_domains[agent].len();
                        inputs[agent] = input_domains[agent][rest % len].clone();
                        rest /= len;
                    }
                    return Err(Error::ProtocolNotTotal { inputs, aux });
                }
            }
        }
        Ok(Self {
            input_domains,
            aux_domain,
            outputs: filled,
        })
    }

    /// Number of agents the protocol takes inputs from.
    pub fn agent_count(&self) -> usize {
        self.input_domains.len()
    }

    pub fn input_domains(&self) -> &[Vec<String>] {
        &self.input_domains
    }

    pub fn aux_domain(&self) -> &[String] {
        &self.aux_domain
    }

    /// Sizes of the per-agent input domains.
    pub fn input_sizes(&self) -> Vec<usize> {
        self.input_domains.iter().map(Vec::len).collect()
    }

    /// Output strategy labels for an (input, aux) index pair.
    pub fn output(&self, input_profile: &[usize], aux: usize) -> &[String] {
        let mut flat = 0usize;
        for (&i, domain) in input_profile.iter().zip(&self.input_domains) {
            flat = flat * domain.len() + i;
        }
        &self.outputs[flat * self.aux_domain.len() + aux]
    }

    /// Input labels for an index profile.
    pub fn input_labels(&self, input_profile: &[usize]) -> Vec<String> {
        input_profile
            .iter()
            .zip(&self.input_domains)
            .map(|(&i, d)| d[i].clone())
            .collect()
    }

    /// Iterates all (input profile, aux index) pairs in enumeration order.
    pub fn domain_iter(&self) -> impl Iterator<Item = (Vec<usize>, usize)> + '_ {
        let aux_len = self.aux_domain.len();
        index_product(&self.input_sizes())
            .flat_map(move |inputs| (0..aux_len).map(move |aux| (inputs.clone(), aux)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_table_is_total() {
        let p = ProtocolTable::constant(2, vec!["x".into(), "y".into()]);
        assert_eq!(p.output(&[0, 0], 0), &["x".to_string(), "y".to_string()]);
        assert_eq!(p.domain_iter().count(), 1);
    }

    #[test]
    fn rows_must_cover_domain() {
        let err = ProtocolTable::from_rows(
            vec![vec!["a".into(), "b".into()], vec!["c".into()]],
            vec![],
            &[(vec!["a".into(), "c".into()], NO_AUX.into(), vec!["s".into(), "s".into()])],
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::ProtocolNotTotal {
                inputs: vec!["b".into(), "c".into()],
                aux: NO_AUX.into()
            }
        );
    }

    #[test]
    fn duplicate_rows_rejected() {
        let row = (
            vec!["a".to_string()],
            NO_AUX.to_string(),
            vec!["s".to_string()],
        );
        let err = ProtocolTable::from_rows(
            vec![vec!["a".into()]],
            vec![],
            &[row.clone(), row],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicateProtocolRow { .. }));
    }

    #[test]
    fn domain_iteration_order() {
        let p = ProtocolTable::from_fn(
            vec![vec!["a".into(), "b".into()]],
            vec!["x".into(), "y".into()],
            |inputs, aux| vec![format!("{}-{aux}", inputs[0])],
        )
        .unwrap();
        let seen: Vec<String> = p
            .domain_iter()
            .map(|(i, a)| p.output(&i, a)[0].clone())
            .collect();
        assert_eq!(seen, vec!["a-x", "a-y", "b-x", "b-y"]);
    }
}
