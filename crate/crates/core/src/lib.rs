//! Convolutional codes and behaviors over finite fields.

pub mod field;
pub mod matrix;
pub mod poly;
pub mod polymat;
pub mod code;
pub mod behavior;
pub mod duality;
pub mod realization;
pub mod distance;
pub mod crc;
