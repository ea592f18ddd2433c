pub mod wick;
