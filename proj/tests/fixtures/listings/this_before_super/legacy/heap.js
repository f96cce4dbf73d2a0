// Class MinHeap
function MinHeap(compareFn) {
  this._comparator = compareFn;
}
MinHeap.prototype.compare = function(a, b) {
  return this._comparator(a, b);
};

// Class PriorityQueue
function PriorityQueue() {
  MinHeap.call(this, function(a, b) {
    return this.priority(a) < this.priority(b) ? -1 : 1;
  });
}
PriorityQueue.prototype = new MinHeap();
PriorityQueue.prototype.priority = function(x) {
  return x.p;
};
