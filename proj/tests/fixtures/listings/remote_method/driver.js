var Container = require('./core').Container;
require('./lib/extras');

var c = new Container();
c.addChild({ name: 'hero', id: 7 });
c.addChild({ name: 'coin', id: 9 });
console.log(c.getChildByName('hero').id);
console.log(c.getChildByName('coin').id);
console.log(c.getChildByName('none'));
