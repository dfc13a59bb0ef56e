//! Statistics of the orbit: mean roof, gap distributions, counting and
//! equidistribution, Ford circles.

pub mod counting;
pub mod dist;
pub mod ford;
pub mod mc;
pub mod mean_roof;
pub mod quad;

pub use counting::{count_in_triangle, ks_uniform, square_equidistribution, SquareGrid, TriangleCount, TriangleRegion};
pub use dist::{empirical_dist, limiting_dist, sup_distance, DistTable, Kind, Statistic};
pub use ford::{audit_pairs, ford_circles, Contact, FordCircle, FordSweep, PairAudit};
pub use mean_roof::{mean_roof_montecarlo, mean_roof_quadrature, MeanRoof, Method};
