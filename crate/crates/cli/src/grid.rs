//! Grid specification parsing: `start:stop:count[:log]`.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log: bool,
}

impl GridSpec {
    pub fn parse(text: &str) -> Result<GridSpec, String> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(format!("grid must be start:stop:count[:log], got `{text}`"));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| format!("bad grid start `{}`", parts[0]))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| format!("bad grid stop `{}`", parts[1]))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| format!("bad grid count `{}`", parts[2]))?;
        let log = match parts.get(3) {
            None => false,
            Some(&"log") => true,
            Some(&"linear") => false,
            Some(other) => return Err(format!("bad grid scale `{other}`")),
        };
        if count < 1 {
            return Err("grid count must be at least 1".into());
        }
        if count > 1 && (start.is_nan() || stop.is_nan() || start >= stop) {
            return Err(format!(
                "grid needs start < stop when count > 1, got {start}:{stop}"
            ));
        }
        if log && (start.is_nan() || start <= 0.0) {
            return Err(format!("log grid needs start > 0, got {start}"));
        }
        Ok(GridSpec {
            start,
            stop,
            count,
            log,
        })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let n = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == self.count - 1 {
                    self.stop
                } else if self.log {
                    self.start * (self.stop / self.start).powf(i as f64 / n)
                } else {
                    self.start + (self.stop - self.start) * i as f64 / n
                }
            })
            .collect()
    }
}
