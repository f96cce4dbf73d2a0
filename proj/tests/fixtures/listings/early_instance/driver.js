var d = new DisplayObject();
console.log(d.parent);
console.log(d.getBounds() === _tempDisplayObjectParent);
console.log(_tempDisplayObjectParent instanceof DisplayObject);
console.log(d.getBounds({ x: 1 }).x);
