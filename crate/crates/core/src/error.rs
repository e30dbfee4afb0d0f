use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid filling: {0}")]
    InvalidFilling(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("weight {weight} does not match a*b = {expected}")]
    WeightMismatch { weight: usize, expected: usize },
    #[error("invalid Plücker exchange: {0}")]
    InvalidExchange(String),
    #[error("column length {len} exceeds the number of variables {vars}")]
    ColumnTooLong { len: usize, vars: usize },
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid shard: id {id} of {count}")]
    InvalidShard { id: u64, count: u64 },
    #[error("row width {got} does not match basis width {expected}")]
    WidthMismatch { got: usize, expected: usize },
    #[error("retry budget exhausted: {0}")]
    RetryExhausted(String),
    #[error("p = {p} exceeds p' = {p_prime} for lambda = {lambda}")]
    ConjectureWitness { lambda: String, p: u64, p_prime: u64 },
}
