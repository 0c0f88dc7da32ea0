pub mod distributions;
