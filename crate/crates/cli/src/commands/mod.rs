pub mod compare;
pub mod field;
pub mod gap;
pub mod oracle;
pub mod poly;
pub mod search;
