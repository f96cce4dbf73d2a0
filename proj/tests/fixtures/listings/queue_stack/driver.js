function LinkedList() {
  this.items = [];
}
LinkedList.prototype.size = function() { return this.items.length; };
LinkedList.prototype.add = function(e) { this.items.push(e); };
LinkedList.prototype.addFirst = function(e) { this.items.unshift(e); };
LinkedList.prototype.removeFirst = function() { return this.items.shift(); };

var q = new Queue();
console.log(q.isEmpty());
q.push(1);
q.push(2);
console.log(q.pop());
console.log(q.isEmpty());

var s = new Stack();
s.push(3);
s.push(4);
console.log(s.pop());
console.log(s.isEmpty());
console.log(s instanceof Queue);
