var n = new Namespace('app');
console.log(n.qualify('main'));
console.log(module.exports === Namespace);
