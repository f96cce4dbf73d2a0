// Class Queue
class Queue {
  constructor() { // Constructor function
    this._elements = new LinkedList();
  }
  // Methods
  isEmpty() {
    return this._elements.size() === 0;
  }
  push(e) {
    this._elements.add(e);
  }
  pop() {
    return this._elements.removeFirst();
  }
}

// Class Stack
class Stack extends Queue {
  constructor() {
    // Calling parent's class constructor
    super();
  }
  // Overwritten method
  push(e) {
    this._elements.addFirst(e);
  }
}
