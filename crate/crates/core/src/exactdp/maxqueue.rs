use std::collections::VecDeque;

/// FIFO queue that also reports the maximum of its contents.
///
/// Alongside the items it keeps a non-increasing deque of candidate maxima;
/// each element enters and leaves that deque at most once, so every
/// operation is amortized O(1).
#[derive(Debug, Clone)]
pub struct MaxQueue<T> {
    items: VecDeque<T>,
    maxima: VecDeque<T>,
}

impl<T: Ord + Clone> MaxQueue<T> {
    pub fn new() -> Self {
        MaxQueue { items: VecDeque::new(), maxima: VecDeque::new() }
    }

    pub fn enque(&mut self, x: T) {
        while self.maxima.back().is_some_and(|b| *b < x) {
            self.maxima.pop_back();
        }
        self.maxima.push_back(x.clone());
        self.items.push_back(x);
    }

    /// Removes the oldest element; `None` on an empty queue.
    pub fn decue(&mut self) -> Option<T> {
        let x = self.items.pop_front()?;
        if self.maxima.front() == Some(&x) {
            self.maxima.pop_front();
        }
        Some(x)
    }

    /// `None` on an empty queue.
    pub fn get_max(&self) -> Option<&T> {
        self.maxima.front()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

impl<T: Ord + Clone> Default for MaxQueue<T> {
    fn default() -> Self {
        Self::new()
    }
}
