pub mod coding;
pub mod expansion;
pub mod numerics;
pub mod perron;
pub mod synthesis;
pub mod words;
