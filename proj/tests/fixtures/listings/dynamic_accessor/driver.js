var s = new Socket('c1');
console.log(s.conn);
var chained = s.broadcast.volatile;
console.log(chained === s);
console.log(JSON.stringify(s.flags));
