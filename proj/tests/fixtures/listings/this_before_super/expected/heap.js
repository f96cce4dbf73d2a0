// Class MinHeap
class MinHeap {
  constructor(compareFn) {
    this._comparator = compareFn;
  }
  compare(a, b) {
    return this._comparator(a, b);
  }
  setComparator(compareFn) {
    this._comparator = compareFn;
  }
}

// Class PriorityQueue
class PriorityQueue extends MinHeap {
  constructor() {
    super();
    this.setComparator((function(a, b) {
      return this.priority(a) < this.priority(b) ? -1 : 1;
    }).bind(this));
  }
  priority(x) {
    return x.p;
  }
}
